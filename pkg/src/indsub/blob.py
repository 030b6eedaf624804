"""Blob graphs: intersection-or-touch graphs on connected vertex sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import ResourceLimit
from .graph import Graph, connected_supersets
from .instance import Instance


@dataclass(frozen=True)
class BlobVertex:
    set: frozenset[int]
    terminal_index: int | None = None


class BlobGraph:
    """Nodes are connected sets of ``host``; two nodes are adjacent when they
    intersect or some host edge joins them."""

    def __init__(self, host: Graph, nodes):
        self.host = host
        self.nodes: tuple[BlobVertex, ...] = tuple(nodes)

    def __len__(self):
        return len(self.nodes)

    @cached_property
    def _masks(self) -> list[tuple[int, int]]:
        view = self.host.view
        out = []
        for node in self.nodes:
            m = view.mask(node.set)
            out.append((m, view.closed_nbhd(m)))
        return out

    def adjacent(self, a: int, b: int) -> bool:
        return a != b and bool(self._masks[a][1] & self._masks[b][0])

    @cached_property
    def _graph(self) -> Graph:
        masks = self._masks
        edges = []
        for a in range(len(masks)):
            closed = masks[a][1]
            for b in range(a + 1, len(masks)):
                if closed & masks[b][0]:
                    edges.append((a, b))
        return Graph.from_edges(len(masks), edges)

    def as_graph(self) -> Graph:
        """The blob graph with nodes renumbered ``0..len-1`` in node order."""
        return self._graph

    def to_json(self) -> dict:
        return {"nodes": [{"set": sorted(n.set), "terminal_index": n.terminal_index} for n in self.nodes]}


def full_blob(g: Graph, limit: int = 8) -> BlobGraph:
    """Blob graph over every connected vertex subset of ``g``."""
    if len(g) > limit:
        raise ResourceLimit(f"full blob graph limited to {limit} vertices, got {len(g)}")
    view = g.view
    nodes = []
    for size in range(1, len(g) + 1):
        for combo in combinations(g.vertices, size):
            if view.is_connected(view.mask(combo)):
                nodes.append(BlobVertex(frozenset(combo)))
    return BlobGraph(g, nodes)


def terminal_blob(inst: Instance, max_size: int, minimal: bool = False,
                  allowed=None, tick=None) -> BlobGraph:
    """Connected sets of size at most ``max_size`` holding all of one terminal
    set and nothing of the others.

    ``minimal`` keeps only inclusion-minimal sets per terminal set;
    ``allowed`` further restricts the non-terminal vertices that may be used.
    """
    g = inst.graph
    terminals = inst.terminals
    base = set(g.vertices) if allowed is None else set(allowed) | terminals
    nodes = []
    for i, z in enumerate(inst.terminal_sets):
        room = (base - terminals) | z
        for x in connected_supersets(g, z, room, max_size=max_size, minimal=minimal, tick=tick):
            nodes.append(BlobVertex(x, i))
    return BlobGraph(g, nodes)


def p5_blob(inst: Instance, allowed) -> BlobGraph:
    """Nodes ``Z_i + {s}`` for ``s`` in ``allowed`` whenever that set is connected."""
    g = inst.graph
    view = g.view
    terminals = inst.terminals
    nodes = []
    for i, z in enumerate(inst.terminal_sets):
        for s in sorted(set(allowed) - terminals):
            x = z | {s}
            if view.is_connected(view.mask(x)):
                nodes.append(BlobVertex(x, i))
    return BlobGraph(g, nodes)
