import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import to_nx
from indsub.errors import InvalidArgument, ParseError, ResourceLimit
from indsub.generators import random_graph
from indsub.graph import (ACYCLIC, Graph, closed_neighborhood, complete_graph, connected_components,
                          connected_supersets, contract_edge, cycle_graph, disjoint_union, format_graph, girth,
                          induced_subgraph, is_connected_set, line_graph, min_connected_dominating_set,
                          parse_graph, path_graph, petersen_graph, star_graph, subdivide_edges)
from indsub.patterns import contains_induced, is_h_free, parse_pattern


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def test_rejects_loops_and_unknown_endpoints():
    with pytest.raises(InvalidArgument):
        Graph([0, 1], [(0, 0)])
    with pytest.raises(InvalidArgument):
        Graph([0, 1], [(0, 2)])


def test_duplicate_edges_collapse():
    g = Graph([0, 1], [(0, 1), (1, 0)])
    assert g.num_edges == 1


def test_induced_subgraph_examples():
    sub = induced_subgraph(cycle_graph(5), {0, 1, 2})
    assert sorted(sub.edges()) == [(0, 1), (1, 2)]
    assert len(induced_subgraph(cycle_graph(5), set())) == 0
    with pytest.raises(InvalidArgument):
        induced_subgraph(cycle_graph(5), {7})


def test_induced_subgraph_matches_edge_filter(rng):
    for _ in range(30):
        g = random_graph(10, 0.4, rng)
        s = set(rng.sample(range(10), 6))
        want = {(u, v) for u, v in g.edges() if u in s and v in s}
        sub = induced_subgraph(g, s)
        assert set(sub.vertices) == s
        assert set(sub.edges()) == want


def test_contract_edge_examples():
    g, w = contract_edge(path_graph(3), 0, 1)
    assert len(g) == 2 and g.num_edges == 1 and w not in (0, 1, 2)
    k2, _ = contract_edge(complete_graph(3), 0, 2)
    assert len(k2) == 2 and k2.num_edges == 1
    with pytest.raises(InvalidArgument):
        contract_edge(path_graph(3), 0, 2)


def test_contraction_keeps_linear_forest_freeness(rng):
    patterns = [parse_pattern(s) for s in ("P4", "P5", "2P2", "P2+P3", "P1+P4")]
    checked = 0
    while checked < 500:
        g = random_graph(rng.randint(4, 10), rng.uniform(0.2, 0.6), rng)
        h = rng.choice(patterns)
        if not g.edges() or not is_h_free(g, h):
            continue
        u, v = rng.choice(g.edges())
        c, _ = contract_edge(g, u, v)
        assert is_h_free(c, h)
        checked += 1


def test_subdivision_examples():
    c6 = subdivide_edges(complete_graph(3), 1)
    assert len(c6) == 6 and all(c6.degree(v) == 2 for v in c6) and girth(c6) == 6
    g = petersen_graph()
    assert subdivide_edges(g, 0) is g
    assert girth(subdivide_edges(complete_graph(4), 2)) == 9


@given(graphs(max_n=7), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_subdivision_counts_and_girth(g, t):
    out = subdivide_edges(g, t)
    assert len(out) == len(g) + t * g.num_edges
    assert set(g.vertices) <= set(out.vertices)
    before = girth(g)
    if before is not ACYCLIC:
        assert girth(out) >= (t + 1) * before
    else:
        assert girth(out) is ACYCLIC


def test_line_graph_examples():
    lp3, _ = line_graph(path_graph(3))
    assert len(lp3) == 2 and lp3.num_edges == 1
    lk3, _ = line_graph(complete_graph(3))
    assert lk3.num_edges == 3
    lk4, index = line_graph(complete_graph(4))
    assert len(lk4) == 6 and all(lk4.degree(v) == 4 for v in lk4)
    assert set(index) == set(complete_graph(4).edges())


@given(graphs(max_n=8))
@settings(max_examples=80, deadline=None)
def test_line_graph_matches_networkx_and_is_claw_free(g):
    lg, index = line_graph(g)
    ref = nx.line_graph(to_nx(g))
    back = {i: e for e, i in index.items()}
    assert {frozenset((back[a], back[b])) for a, b in lg.edges()} == \
        {frozenset((tuple(sorted(a)), tuple(sorted(b)))) for a, b in ref.edges()}
    assert contains_induced(lg, parse_pattern("claw")) is None


def test_components_and_neighbourhoods():
    two = disjoint_union([complete_graph(3), complete_graph(3)])
    assert len(connected_components(two)) == 2
    c6 = cycle_graph(6)
    assert not is_connected_set(c6, {0, 3})
    assert is_connected_set(c6, {0, 1})
    assert closed_neighborhood(star_graph(4), {0}) == frozenset(range(5))
    with pytest.raises(InvalidArgument):
        closed_neighborhood(c6, {9})


@given(graphs())
@settings(max_examples=80, deadline=None)
def test_components_match_networkx(g):
    ours = {frozenset(c) for c in connected_components(g)}
    assert ours == {frozenset(c) for c in nx.connected_components(to_nx(g))}


def test_girth_examples():
    assert girth(path_graph(6)) is ACYCLIC
    assert girth(cycle_graph(7)) == 7
    assert girth(petersen_graph()) == 5


@given(graphs())
@settings(max_examples=80, deadline=None)
def test_girth_matches_networkx(g):
    ref = nx.girth(to_nx(g))
    ours = girth(g)
    assert (ours is ACYCLIC) == (ref == float("inf"))
    if ours is not ACYCLIC:
        assert ours == ref


def _brute_mcds_size(g):
    vs = list(g.vertices)
    for size in range(1, len(vs) + 1):
        for combo in itertools.combinations(vs, size):
            if closed_neighborhood(g, combo) == frozenset(vs) and is_connected_set(g, combo):
                return size


def test_mcds_examples():
    assert min_connected_dominating_set(star_graph(5)) == frozenset({0})
    assert min_connected_dominating_set(path_graph(5)) == frozenset({1, 2, 3})
    with pytest.raises(InvalidArgument):
        min_connected_dominating_set(disjoint_union([path_graph(2), path_graph(2)]))
    with pytest.raises(ResourceLimit):
        min_connected_dominating_set(path_graph(20))


def test_mcds_size_matches_subset_enumeration(rng):
    done = 0
    while done < 40:
        g = random_graph(10, rng.uniform(0.2, 0.5), rng)
        if len(connected_components(g)) != 1:
            continue
        x = min_connected_dominating_set(g)
        assert closed_neighborhood(g, x) == frozenset(g.vertices) and is_connected_set(g, x)
        assert len(x) == _brute_mcds_size(g)
        done += 1


def _brute_supersets(g, req, allowed, max_size):
    out = []
    rest = sorted(set(allowed) - set(req))
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            s = set(req) | set(extra)
            if len(s) <= max_size and is_connected_set(g, s):
                out.append(frozenset(s))
    return out


def test_connected_supersets_match_brute_force(rng):
    for _ in range(40):
        g = random_graph(rng.randint(4, 8), rng.uniform(0.2, 0.6), rng)
        req = rng.sample(list(g.vertices), rng.randint(1, 3))
        allowed = set(rng.sample(list(g.vertices), rng.randint(1, len(g)))) | set(req)
        cap = rng.randint(len(req), len(g))
        ours = connected_supersets(g, req, allowed, max_size=cap)
        want = _brute_supersets(g, req, allowed, cap)
        assert sorted(map(sorted, ours)) == sorted(map(sorted, want))
        minimal = set(connected_supersets(g, req, allowed, max_size=cap, minimal=True))
        assert minimal == {s for s in want if not any(t < s for t in want)}


def test_text_format_round_trip_and_errors():
    g = petersen_graph().remove_vertices([3])
    back = parse_graph(format_graph(g))
    assert back.vertices == g.vertices and set(back.edges()) == set(g.edges())
    assert parse_graph("# comment\n3 1\n0 2\n").edges() == [(0, 2)]
    with pytest.raises(ParseError):
        parse_graph("3 2\n0 1\n")
    with pytest.raises(ParseError):
        parse_graph("3 1\n0 x\n")
    with pytest.raises(ParseError):
        parse_graph("")


@given(graphs())
@settings(max_examples=50, deadline=None)
def test_round_trip_is_identity(g):
    back = parse_graph(format_graph(g))
    assert back.vertices == g.vertices and set(back.edges()) == set(g.edges())
