import random

import networkx as nx
import pytest

from indsub.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(g.vertices)
    out.add_edges_from(g.edges())
    return out


def from_nx(h: nx.Graph) -> Graph:
    return Graph(list(h.nodes), list(h.edges))


@pytest.fixture
def rng():
    return random.Random(20240611)
