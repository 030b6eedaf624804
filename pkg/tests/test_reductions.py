import random

import pytest

from indsub.errors import InvalidArgument, ParseError, ResourceLimit
from indsub.generators import random_cnf, random_graph, random_instance
from indsub.graph import Acyclic, complete_graph, disjoint_union, girth, path_graph
from indsub.instance import Instance
from indsub.patterns import is_h_free, parse_pattern
from indsub.reductions import (CnfFormula, Semantics, Variant, gen_flexible_p14_gadget, gen_monotone_gadget,
                               gen_nae_gadget, parse_dimacs, read_dimacs, reduce_via_line_graph,
                               reduce_via_subdivision, sat_brute, subdivision_count)
from indsub.solvers import oracle_disjoint_cs, oracle_flexible_idp, oracle_idcs


# -- DIMACS ----------------------------------------------------------------------------

def test_parse_dimacs_examples():
    f = parse_dimacs("p cnf 1 1\n1 0")
    assert f.num_vars == 1 and f.clauses == ((1,),)
    f = parse_dimacs("c comment\np cnf 2 1\n1 -2 0\n")
    assert f.clauses == ((1, -2),)
    # clauses may span lines
    assert parse_dimacs("p cnf 3 2\n1 2\n3 0 -1 0\n").clauses == ((1, 2, 3), (-1,))


@pytest.mark.parametrize("text", [
    "p cnf 2 2\n1 2 0\n",
    "1 2 0\n",
    "p cnf 2 1\n1 x 0\n",
    "p cnf 2 1\n1 3 0\n",
    "p cnf 2 1\n1 -1 0\n",
    "p cnf 2 1\n1 2\n",
    "p dnf 2 1\n1 2 0\n",
    "",
])
def test_parse_dimacs_errors(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


def test_parse_error_names_the_line():
    with pytest.raises(ParseError, match="line 3"):
        parse_dimacs("p cnf 2 2\n1 0\n2 y 0\n")


def test_dimacs_round_trip(rng, tmp_path):
    for _ in range(20):
        f = random_cnf(rng)
        assert parse_dimacs(f.to_dimacs()) == f
    path = tmp_path / "f.cnf"
    path.write_text("p cnf 2 1\n-1 2 0\n")
    assert read_dimacs(path).clauses == ((-1, 2),)


def test_formula_validation():
    with pytest.raises(InvalidArgument):
        CnfFormula(2, [[1, 3]])
    with pytest.raises(InvalidArgument):
        CnfFormula(2, [[1, 0]])
    with pytest.raises(InvalidArgument):
        CnfFormula(2, [[2, -2]])
    assert CnfFormula(2, [[1, 2], [-1, -2]]).is_monotone()
    assert not CnfFormula(2, [[1, -2]]).is_monotone()


# -- brute force ----------------------------------------------------------------------

def test_sat_brute_examples():
    assert sat_brute(CnfFormula(2, [[1, 2]]))
    assert sat_brute(CnfFormula(3, [[1, 2, 3]]), Semantics.NAE)
    assert not sat_brute(CnfFormula(1, [[1], [-1]]))
    # a unit clause can never be not-all-equal
    assert not sat_brute(CnfFormula(1, [[1]]), Semantics.NAE)
    assert not sat_brute(CnfFormula(3, [[1, 2], [2, 3], [1, 3]]), Semantics.NAE)
    assert sat_brute(CnfFormula(0, []))


def test_sat_brute_errors():
    with pytest.raises(ResourceLimit):
        sat_brute(CnfFormula(23, [[1]]))
    with pytest.raises(InvalidArgument):
        sat_brute(CnfFormula(2, [[1, -2]]), Semantics.MONOTONE_CHECK)
    assert sat_brute(CnfFormula(2, [[1], [-2]]), Semantics.MONOTONE_CHECK)


def test_nae_is_symmetric_under_complement(rng):
    for _ in range(40):
        f = random_cnf(rng, min_width=2)
        flipped = CnfFormula(f.num_vars, [[-l for l in c] for c in f.clauses])
        assert sat_brute(f, Semantics.NAE) == sat_brute(flipped, Semantics.NAE)


# -- formula gadgets -------------------------------------------------------------------

def test_nae_gadget_examples():
    out = gen_nae_gadget(CnfFormula(3, [[1, 2, 3]]))
    assert len(out.instance.graph) == 8 and out.variant is Variant.IDCS
    assert oracle_idcs(out.instance).is_yes
    out = gen_nae_gadget(CnfFormula(3, [[1, 2], [2, 3], [1, 3]]))
    assert oracle_idcs(out.instance).is_no
    assert out.certify() == ["3P2", "P7"]


def test_nae_gadget_anatomy():
    out = gen_nae_gadget(CnfFormula(2, [[1, 2]]))
    roles = out.vertex_roles
    assert [roles[v] for v in range(6)] == ["X-clique(1)", "X-clique(2)", "X'-clique(1)", "X'-clique(2)",
                                           "C(1)", "C'(1)"]
    assert out.instance.terminal_sets == (frozenset({4}), frozenset({5}))
    assert out.instance.graph.label(4) == "C(1)"


@pytest.mark.parametrize("clauses", [[[1, 2, 3, 4]], [[1]], [[1, -2]], []])
def test_nae_gadget_errors(clauses):
    with pytest.raises(InvalidArgument):
        gen_nae_gadget(CnfFormula(4, clauses))


def test_monotone_gadget_examples():
    f = CnfFormula(3, [[1], [2], [3], [-1, -2, -3]])
    out = gen_monotone_gadget(f)
    assert len(out.instance.graph) == 12
    # every variable is forced true, so the negative clause fails
    assert not sat_brute(f)
    assert oracle_idcs(out.instance).is_no
    f = CnfFormula(3, [[1], [2], [-1, -2, -3]])
    out = gen_monotone_gadget(f)
    assert len(out.instance.graph) == 11
    assert sat_brute(f) and oracle_idcs(out.instance).is_yes
    out = gen_monotone_gadget(CnfFormula(1, [[1], [-1]]))
    assert oracle_idcs(out.instance).is_no


def test_monotone_gadget_anatomy():
    out = gen_monotone_gadget(CnfFormula(3, [[1, 2], [-1, -2, -3]]))
    g, roles = out.instance.graph, out.vertex_roles
    assert roles[3] == "p(1)" and roles[4] == "x"
    assert [roles[v] for v in range(5, 10)] == [f"n(1,{q})" for q in range(1, 6)]
    assert out.instance.terminal_sets == (frozenset({3, 4}), frozenset({8, 9}))
    assert g.neighbors(4) == frozenset({0, 1, 2})
    assert g.neighbors(8) == frozenset({5, 6, 7})
    assert out.certify() == ["2P4"]


def test_monotone_gadget_rejects_mixed_clause():
    with pytest.raises(InvalidArgument):
        gen_monotone_gadget(CnfFormula(2, [[1, -2]]))


def test_flexible_gadget_examples():
    out = gen_flexible_p14_gadget(CnfFormula(1, [[1]]))
    assert out.variant is Variant.FLEXIBLE_IDP
    assert oracle_flexible_idp(out.instance).is_yes
    out = gen_flexible_p14_gadget(CnfFormula(1, [[1], [-1]]))
    assert oracle_flexible_idp(out.instance).is_no
    assert out.certify() == ["P14"]


def test_flexible_gadget_errors():
    with pytest.raises(InvalidArgument):
        gen_flexible_p14_gadget(CnfFormula(4, [[1, 2, 3, 4]]))
    with pytest.raises(InvalidArgument):
        gen_flexible_p14_gadget(CnfFormula(0, []))
    with pytest.raises(InvalidArgument):
        CnfFormula(2, [[1, 1]])


def test_gadgets_decide_small_formulas(rng):
    for _ in range(25):
        f = random_cnf(rng, max_vars=3, max_clauses=3, positive_only=True, min_width=2)
        assert oracle_idcs(gen_nae_gadget(f).instance).is_yes == sat_brute(f, Semantics.NAE)
        f = random_cnf(rng, max_vars=3, max_clauses=3, monotone=True)
        assert oracle_idcs(gen_monotone_gadget(f).instance).is_yes == sat_brute(f)
        f = random_cnf(rng, max_vars=3, max_clauses=3)
        assert oracle_flexible_idp(gen_flexible_p14_gadget(f).instance).is_yes == sat_brute(f)


# -- instance transforms ---------------------------------------------------------------

def test_line_graph_examples():
    src = Instance(complete_graph(4), [[0, 1], [2, 3]])
    out = reduce_via_line_graph(src)
    assert oracle_disjoint_cs(src).is_yes and oracle_idcs(out.instance).is_yes
    assert is_h_free(out.instance.graph, parse_pattern("K1,3"))
    assert len(out.instance.graph) == 6 + 4
    assert all(out.vertex_roles[v].startswith("pendant") for z in out.instance.terminal_sets for v in z)
    split = Instance(disjoint_union([path_graph(2), path_graph(2)]), [[0, 2], [1, 3]])
    assert oracle_disjoint_cs(split).is_no
    assert oracle_idcs(reduce_via_line_graph(split).instance).is_no
    with pytest.raises(InvalidArgument):
        reduce_via_line_graph(Instance(path_graph(3), [[0], [1], [2]]))


def test_line_graph_preserves_answers(rng):
    seen = 0
    while seen < 30:
        g = random_graph(rng.randint(4, 7), 0.45, rng)
        src = random_instance(g, rng, 2, 2)
        if src is None:
            continue
        seen += 1
        assert oracle_disjoint_cs(src).status is oracle_idcs(reduce_via_line_graph(src).instance).status


def test_subdivision_examples():
    assert [subdivision_count(g) for g in (3, 4, 6, 7, 9)] == [1, 2, 2, 3, 3]
    src = Instance(complete_graph(4), [[0, 1], [2, 3]])
    out = reduce_via_subdivision(src, 6)
    assert girth(out.instance.graph) == 9
    assert len(out.instance.graph) == 4 + 2 * 6
    out = reduce_via_subdivision(src, 3)
    g = out.instance.graph
    assert not any(g.has_edge(u, v) for u in range(4) for v in range(4))
    assert girth(out.instance.graph) == 6
    assert isinstance(girth(reduce_via_subdivision(Instance(path_graph(3), [[0, 2]]), 3).instance.graph), Acyclic)
    with pytest.raises(InvalidArgument):
        subdivision_count(2)
    with pytest.raises(InvalidArgument):
        reduce_via_subdivision(Instance(path_graph(6), [[0, 1, 2], [3], [4, 5]]), 6)


def test_subdivision_preserves_answers(rng):
    seen = 0
    while seen < 30:
        g = random_graph(8, 0.35, rng)
        src = random_instance(g, rng, 2, 2)
        if src is None:
            continue
        seen += 1
        out = reduce_via_subdivision(src, rng.choice((3, 6)))
        assert oracle_disjoint_cs(src).status is oracle_idcs(out.instance).status
