import itertools
import random

import pytest

from indsub.errors import InvalidArgument
from indsub.generators import mixed_instance, planted_instance, random_graph, random_h_free_graph, random_instance
from indsub.graph import Graph, complete_graph, cycle_graph, disjoint_union, path_graph, subdivide_edges, \
    star_graph
from indsub.instance import Instance, verify_flexible_solution, verify_solution
from indsub.patterns import GENERAL, EllFixed, KFixed, parse_pattern
from indsub.reductions import CnfFormula, gen_monotone_gadget
from indsub.solvers import (Budget, Status, dispatch, oracle_disjoint_cs, oracle_flexible_idp, oracle_idcs, plan,
                            solve_2p4_kfixed, solve_kp6, solve_nearly, solve_p3p4, solve_p5, solve_pr_generic,
                            solve_sp3p6)


def brute(inst: Instance, induced: bool = True) -> bool:
    """Assign every non-terminal to no part or one part and check directly."""
    g = inst.graph
    owner = inst.owner()
    free = [v for v in g.vertices if v not in owner]
    for labels in itertools.product(range(inst.k + 1), repeat=len(free)):
        parts = [set(z) for z in inst.terminal_sets]
        for v, lab in zip(free, labels):
            if lab:
                parts[lab - 1].add(v)
        from indsub.instance import Solution
        sol = Solution(parts)
        if induced:
            if verify_solution(inst, sol):
                return True
        else:
            from indsub.graph import is_connected_set
            if all(is_connected_set(g, d) for d in parts):
                return True
    return False


def spider(arms: int, offset: int = 0):
    """Centre with ``arms`` paths of length two; returns edges and the leaves."""
    edges, leaves = [], []
    c = offset
    for i in range(arms):
        a, z = offset + 1 + 2 * i, offset + 2 + 2 * i
        edges += [(c, a), (a, z)]
        leaves.append(z)
    return edges, leaves, offset + 1 + 2 * arms


# -- oracles ------------------------------------------------------------------------

def test_oracle_examples():
    two = disjoint_union([path_graph(3), path_graph(3)])
    assert oracle_idcs(Instance(two, [[0, 2], [3, 5]])).is_yes
    assert oracle_idcs(Instance(cycle_graph(6), [[0, 2], [3, 5]])).is_no
    split = disjoint_union([path_graph(2), path_graph(2)])
    assert oracle_idcs(Instance(split, [[0, 2]])).is_no


def test_oracles_match_assignment_brute_force(rng):
    for _ in range(120):
        g = random_graph(rng.randint(3, 9), rng.uniform(0.2, 0.6), rng)
        inst = random_instance(g, rng, rng.randint(1, 3), 3)
        if inst is None or len(g) - len(inst.terminals) > 7:
            continue
        assert oracle_idcs(inst).is_yes == brute(inst)
        assert oracle_disjoint_cs(inst).is_yes == brute(inst, induced=False)


def test_disjoint_variant_examples():
    k4 = Instance(complete_graph(4), [[0, 1], [2, 3]])
    assert oracle_disjoint_cs(k4).is_yes
    assert oracle_idcs(k4).is_no
    split = Instance(disjoint_union([path_graph(2), path_graph(2)]), [[0, 2], [1, 3]])
    assert oracle_disjoint_cs(split).is_no


def test_flexible_oracle_examples():
    c4 = Instance(cycle_graph(4), [[0, 1], [2, 3]])
    ans = oracle_flexible_idp(c4)
    assert ans.is_yes and verify_flexible_solution(c4, ans.solution)
    split = Instance(disjoint_union([path_graph(2), path_graph(2)]), [[0, 2]])
    assert oracle_flexible_idp(split).is_no
    with pytest.raises(InvalidArgument):
        oracle_flexible_idp(Instance(path_graph(3), [[0, 1, 2]]))


def test_flexible_is_a_relaxation(rng):
    for _ in range(100):
        g = random_graph(rng.randint(4, 10), 0.35, rng)
        inst = random_instance(g, rng, rng.randint(1, 3), 2, min_size=2, independent=True)
        if inst is None:
            continue
        if oracle_idcs(inst).is_yes:
            assert oracle_flexible_idp(inst).is_yes


# -- class-specific solvers: fixed examples -------------------------------------------

def test_sp3p6_examples():
    star = subdivide_edges(star_graph(4), 1)
    # leaves 1..4 sit at distance two from the centre; pair opposite leaves
    inst = Instance(star, [[1, 2]])
    assert solve_sp3p6(inst, 0, 2).is_yes
    c6 = Instance(cycle_graph(6), [[0, 2], [3, 5]])
    assert solve_sp3p6(c6, 0, 2).is_no
    far = disjoint_union([subdivide_edges(star_graph(3), 1), subdivide_edges(star_graph(3), 1)])
    inst = Instance(far, [[1, 2], [8, 9]])
    assert solve_sp3p6(inst, 0, 2).is_yes == oracle_idcs(inst).is_yes is True
    with pytest.raises(InvalidArgument):
        solve_sp3p6(Instance(path_graph(6), [[0, 5]]), 0, 2)
    with pytest.raises(InvalidArgument):
        solve_sp3p6(Instance(path_graph(4), [[0, 2, 3]]), 0, 2)


def test_pr_generic_examples():
    assert solve_pr_generic(Instance(cycle_graph(5), [[0, 2], [3]]), 5, 2).is_no
    singles = Instance(disjoint_union([path_graph(2), path_graph(2)]), [[0], [2]])
    assert solve_pr_generic(singles, 5, 1).is_yes


def test_p5_examples():
    # each pair has a private common neighbour; the two neighbours are not adjacent
    g = Graph(range(6), [(0, 4), (1, 4), (2, 5), (3, 5)])
    ans = solve_p5(Instance(g, [[0, 1], [2, 3]]), 0)
    assert ans.is_yes and verify_solution(Instance(g, [[0, 1], [2, 3]]), ans.solution)
    # the only connectors are adjacent
    g = Graph(range(6), [(0, 4), (1, 4), (2, 5), (3, 5), (4, 5)])
    assert solve_p5(Instance(g, [[0, 1], [2, 3]]), 0).is_no
    assert solve_p5(Instance(path_graph(2), [[0], [1]]), 0).is_no


def test_kp6_examples():
    assert solve_kp6(Instance(path_graph(3), [[0, 2]]), 0).is_yes
    # the only connectors would be adjacent
    g = Graph(range(6), [(0, 4), (1, 4), (2, 5), (3, 5), (4, 5)])
    assert solve_kp6(Instance(g, [[0, 1], [2, 3]]), 0).is_no


def test_kp6_difficult_parts():
    # two spiders whose leaf sets need six extra vertices each, beyond the easy parts
    e1, z1, nxt = spider(5)
    e2, z2, nxt = spider(5, nxt)
    inst = Instance(Graph(range(nxt), e1 + e2), [z1, z2])
    ans = solve_kp6(inst, 0)
    assert ans.is_yes and ans.guess is not None
    assert ans.guess.y and ans.guess.pairs
    for i, (x, z) in ans.guess.pairs.items():
        assert inst.graph.has_edge(x, z)


def test_nearly_swap_case():
    # nine arms: the only dominator of the leaf set has more than 7s+1 = 8 vertices
    e1, z1, nxt = spider(9)
    g = Graph(range(nxt + 3), e1 + [(nxt, nxt + 1), (nxt + 1, nxt + 2)])
    inst = Instance(g, [z1, [nxt, nxt + 2]])
    ans = solve_kp6(inst, 1)
    assert ans.is_yes and ans.guess.q and ans.guess.r
    (i, q), = ans.guess.q.items()
    r = ans.guess.r[i]
    assert len(q) == len(r) == 1 and q <= inst.terminal_sets[i]
    assert oracle_idcs(inst).is_yes


def test_nearly_identity_for_s0_and_errors():
    inst = Instance(disjoint_union([path_graph(3), path_graph(3)]), [[0, 2], [3, 5]])
    assert solve_nearly(inst, 0, "p5", 5).status is solve_p5(inst, 0).status
    assert solve_nearly(inst, 1, "kp6", 6).is_yes
    assert solve_nearly(inst, 1, lambda i, b: solve_p5(i, 0, b), 5).is_yes
    with pytest.raises(InvalidArgument):
        solve_nearly(inst, 1, "p5", 7)
    with pytest.raises(InvalidArgument):
        solve_nearly(inst, 1, "nope", 5)


def test_2p4_on_monotone_gadget():
    f = CnfFormula(3, [[1, 2], [-1, -2, -3]])
    out = gen_monotone_gadget(f)
    ans = solve_2p4_kfixed(out.instance, 0, 2)
    assert ans.status is oracle_idcs(out.instance).status is Status.YES
    with pytest.raises(InvalidArgument):
        solve_2p4_kfixed(out.instance, 0, 3)


def test_2p4_monotone_gadgets_match_oracle(rng):
    for _ in range(30):
        n = rng.randint(1, 4)
        pos = [rng.sample(range(1, n + 1), rng.randint(1, n))]
        neg = [[-v for v in rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))]]
        inst = gen_monotone_gadget(CnfFormula(n, pos + neg)).instance
        assert solve_2p4_kfixed(inst, 0, 2).status is oracle_idcs(inst).status


def test_p3p4_case_2b(rng):
    h = parse_pattern("P1+P3+P4")
    seen = 0
    while seen < 15:
        g = random_h_free_graph(rng.randint(9, 13), h, rng, p=0.35)
        inst = planted_instance(g, rng, 3, 3)
        if inst is None or min(len(z) for z in inst.terminal_sets) < 1:
            continue
        seen += 1
        assert solve_p3p4(inst, 1).status is oracle_idcs(inst).status


def test_class_preconditions_are_checked():
    p7 = Instance(path_graph(7), [[0, 6]])
    for call in (lambda: solve_p5(p7, 0), lambda: solve_kp6(p7, 0), lambda: solve_p3p4(Instance(path_graph(8), [[0, 7]]), 0),
                 lambda: solve_2p4_kfixed(Instance(path_graph(9), [[0, 8]]), 0, 1),
                 lambda: solve_pr_generic(p7, 6, 2)):
        with pytest.raises(InvalidArgument):
            call()


# -- randomized agreement (smaller than the acceptance run) ----------------------------

CASES = [
    ("P6", lambda i: solve_sp3p6(i, 0, i.ell)),
    ("P3+P6", lambda i: solve_sp3p6(i, 1, i.ell)),
    ("P6", lambda i: solve_pr_generic(i, 6, i.ell)),
    ("P1+P5", lambda i: solve_p5(i, 1)),
    ("2P1+P5", lambda i: solve_p5(i, 2)),
    ("P6", lambda i: solve_kp6(i, 0)),
    ("2P4", lambda i: solve_2p4_kfixed(i, 0, i.k)),
    ("P1+2P4", lambda i: solve_2p4_kfixed(i, 1, i.k)),
    ("P3+P4", lambda i: solve_p3p4(i, 0)),
]


@pytest.mark.parametrize("spec,solver", CASES, ids=[f"{s}-{i}" for i, (s, _) in enumerate(CASES)])
def test_solvers_agree_with_oracle(spec, solver):
    rng = random.Random(spec)
    h = parse_pattern(spec)
    done = 0
    while done < 40:
        g = random_h_free_graph(rng.randint(7, 12), h, rng, p=rng.uniform(0.1, 0.5))
        inst = mixed_instance(g, rng, rng.choice((2, 3)), 3)
        if inst is None:
            continue
        done += 1
        want = oracle_idcs(inst)
        got = solver(inst)
        assert got.status is want.status
        if got.is_yes:
            assert verify_solution(inst, got.solution)


def test_pr6_and_sp3p6_agree(rng):
    h = parse_pattern("P6")
    for _ in range(40):
        g = random_h_free_graph(rng.randint(6, 12), h, rng)
        inst = mixed_instance(g, rng, 2, 3)
        if inst is None:
            continue
        assert solve_pr_generic(inst, 6, inst.ell).status is solve_sp3p6(inst, 0, inst.ell).status


# -- dispatch and budgets -----------------------------------------------------------------

def test_plan_routes():
    assert plan(parse_pattern("P6"), EllFixed(2)) == ("sp3p6", {"s": 0, "ell": 2})
    assert plan(parse_pattern("2P4"), KFixed(2)) == ("2p4-kfixed", {"s": 0, "k": 2})
    assert plan(parse_pattern("P6"), KFixed(2)) == ("kp6", {"s": 0})
    assert plan(parse_pattern("P1+P5"), GENERAL) == ("p5", {"s": 1})
    assert plan(parse_pattern("P3+P4"), GENERAL) == ("p3p4", {"s": 0})
    assert plan(parse_pattern("P7"), EllFixed(3)) == ("pr-generic", {"r": 7, "ell": 3})
    assert plan(parse_pattern("C5"), GENERAL)[0] == "oracle"
    assert plan(parse_pattern("P6"), GENERAL)[0] == "oracle"


def test_dispatch_examples():
    inst = Instance(disjoint_union([path_graph(3), path_graph(3)]), [[0, 2], [3, 5]])
    assert dispatch(inst, parse_pattern("P6"), EllFixed(2)).route.startswith("sp3p6")
    assert dispatch(inst, parse_pattern("2P4"), KFixed(2)).route.startswith("2p4-kfixed")
    assert dispatch(inst, parse_pattern("P6"), KFixed(2)).route.startswith("kp6")
    c5free = dispatch(inst, parse_pattern("C5"))
    assert c5free.route == "oracle" and c5free.is_yes
    with pytest.raises(InvalidArgument):
        dispatch(Instance(cycle_graph(5), [[0, 2]]), parse_pattern("C5"))
    with pytest.raises(InvalidArgument):
        dispatch(inst, parse_pattern("P6"), KFixed(3))
    with pytest.raises(InvalidArgument):
        dispatch(inst, parse_pattern("P6"), EllFixed(1))


def test_budget_exhaustion_gives_up():
    rng = random.Random(3)
    inst = None
    while inst is None:
        inst = planted_instance(random_graph(16, 0.25, rng), rng, 3, 3)
    ans = oracle_idcs(inst, Budget(max_branches=5))
    assert ans.status is Status.GAVE_UP and "budget" in ans.reason
    with pytest.raises(InvalidArgument):
        Budget(max_branches=0)


def test_time_budget_from_environment(monkeypatch):
    monkeypatch.setenv("INDSUB_BUDGET_MS", "250")
    assert Budget().time_limit == 0.25
    monkeypatch.setenv("INDSUB_BUDGET_MS", "soon")
    with pytest.raises(InvalidArgument):
        Budget()


def test_deterministic_answers(rng):
    h = parse_pattern("P1+P5")
    inst = None
    while inst is None:
        inst = mixed_instance(random_h_free_graph(12, h, rng), rng, 3, 3, planted=True)
    runs = {(a.status, a.solution) for a in (solve_p5(inst, 1) for _ in range(3))}
    assert len(runs) == 1
