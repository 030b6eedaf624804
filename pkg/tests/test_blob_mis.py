import itertools

import networkx as nx
import pytest

from conftest import to_nx
from indsub.blob import full_blob, p5_blob, terminal_blob
from indsub.errors import ResourceLimit
from indsub.generators import random_graph, random_h_free_graph, random_instance
from indsub.graph import Graph, complete_graph, cycle_graph, is_connected_set, path_graph
from indsub.instance import Instance, Solution, verify_solution
from indsub.mis import has_independent_set, max_independent_set
from indsub.patterns import is_h_free, parse_pattern


def test_full_blob_small_cases():
    blob = full_blob(path_graph(3))
    assert len(blob) == 6
    assert not is_h_free(blob.as_graph(), parse_pattern("P3"))
    assert is_h_free(full_blob(complete_graph(3)).as_graph(), parse_pattern("P3"))
    assert not is_h_free(full_blob(path_graph(4)).as_graph(), parse_pattern("P4"))
    with pytest.raises(ResourceLimit):
        full_blob(path_graph(9))


def test_blob_adjacency_rule():
    g = path_graph(5)
    blob = full_blob(g)
    for a, b in itertools.combinations(range(len(blob)), 2):
        x, y = blob.nodes[a].set, blob.nodes[b].set
        touch = bool(x & y) or any(g.has_edge(u, v) for u in x for v in y)
        assert blob.adjacent(a, b) == touch == blob.as_graph().has_edge(a, b)


def test_blob_lemma_on_random_graphs(rng):
    for _ in range(60):
        g = random_graph(rng.randint(3, 6), rng.uniform(0.2, 0.7), rng)
        blob = full_blob(g).as_graph()
        for spec in ("P4", "2P2", "P2+P3"):
            h = parse_pattern(spec)
            assert is_h_free(g, h) == is_h_free(blob, h)


def test_terminal_blob_structure(rng):
    for _ in range(40):
        g = random_graph(rng.randint(5, 9), 0.4, rng)
        inst = random_instance(g, rng, rng.randint(2, 3), 2, min_size=2, independent=True)
        if inst is None:
            continue
        blob = terminal_blob(inst, max_size=5)
        bg = blob.as_graph()
        for a, b in itertools.combinations(range(len(blob)), 2):
            if blob.nodes[a].terminal_index == blob.nodes[b].terminal_index:
                assert bg.has_edge(a, b)
        for node in blob.nodes:
            z = inst.terminal_sets[node.terminal_index]
            assert z <= node.set and len(node.set) <= 5 and is_connected_set(g, node.set)
            assert not (node.set - z) & inst.terminals
        # independent sets with one node per index are exactly solutions
        by_index = [[n for n in range(len(blob)) if blob.nodes[n].terminal_index == i] for i in range(inst.k)]
        for pick in itertools.islice(itertools.product(*by_index), 200):
            independent = all(not bg.has_edge(a, b) for a, b in itertools.combinations(pick, 2))
            sol = Solution([blob.nodes[n].set for n in pick])
            assert independent == bool(verify_solution(inst, sol))


def test_p5_blob_examples():
    g = Graph(range(3), [(0, 2), (1, 2)])
    inst = Instance(g, [[0, 1]])
    blob = p5_blob(inst, {2})
    assert [n.set for n in blob.nodes] == [frozenset({0, 1, 2})]
    g2 = Graph(range(3), [(0, 2)])
    assert len(p5_blob(Instance(g2, [[0, 1]]), {2})) == 0


def test_p5_blob_node_count(rng):
    h = parse_pattern("P5")
    for _ in range(20):
        g = random_h_free_graph(rng.randint(6, 12), h, rng)
        inst = random_instance(g, rng, 2, 3, min_size=2, independent=True)
        if inst is None:
            continue
        allowed = set(g.vertices) - inst.terminals
        assert len(p5_blob(inst, allowed)) <= inst.k * len(allowed)


def test_mis_examples():
    assert max_independent_set(cycle_graph(5)).size == 2
    assert max_independent_set(complete_graph(6)).size == 1
    assert max_independent_set(Graph([], [])).size == 0
    assert has_independent_set(cycle_graph(6), 3) is not None
    assert has_independent_set(cycle_graph(6), 4) is None
    assert has_independent_set(complete_graph(3), 0) == frozenset()


def test_mis_matches_networkx(rng):
    for _ in range(80):
        g = random_graph(rng.randint(1, 16), rng.uniform(0.1, 0.8), rng)
        res = max_independent_set(g)
        comp = nx.complement(to_nx(g))
        best = max((len(c) for c in nx.find_cliques(comp)), default=0)
        assert res.size == best == len(res.witness)
        assert all(not g.has_edge(u, v) for u, v in itertools.combinations(res.witness, 2))


def test_mis_budget():
    with pytest.raises(ResourceLimit):
        max_independent_set(random_graph(60, 0.1, __import__("random").Random(1)), budget=10)
