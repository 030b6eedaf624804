"""Problem instances, solution checking, and instance normalization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvalidArgument, ParseError
from .graph import Graph, component_containing, contract_edge
from .patterns import Pattern, is_h_free


@dataclass(frozen=True)
class Instance:
    """A graph with a collection of pairwise disjoint, non-empty terminal sets."""

    graph: Graph
    terminal_sets: tuple[frozenset[int], ...]

    def __init__(self, graph: Graph, terminal_sets):
        sets = tuple(frozenset(z) for z in terminal_sets)
        if not sets:
            raise InvalidArgument("an instance needs at least one terminal set")
        seen: set[int] = set()
        for i, z in enumerate(sets):
            if not z:
                raise InvalidArgument(f"terminal set {i} is empty")
            graph.check_vertices(z)
            if seen & z:
                raise InvalidArgument(f"terminal set {i} overlaps an earlier set at {sorted(seen & z)}")
            seen |= z
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "terminal_sets", sets)

    @property
    def k(self) -> int:
        return len(self.terminal_sets)

    @property
    def ell(self) -> int:
        return max(len(z) for z in self.terminal_sets)

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset().union(*self.terminal_sets)

    def owner(self) -> dict[int, int]:
        return {v: i for i, z in enumerate(self.terminal_sets) for v in z}


@dataclass(frozen=True)
class Solution:
    """Vertex sets ``D^1..D^k``, index-aligned with the terminal sets."""

    subgraphs: tuple[frozenset[int], ...]

    def __init__(self, subgraphs):
        object.__setattr__(self, "subgraphs", tuple(frozenset(d) for d in subgraphs))


class Verdict(NamedTuple):
    ok: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _check_alignment(inst: Instance, sol: Solution) -> None:
    if len(sol.subgraphs) != inst.k:
        raise InvalidArgument(f"solution has {len(sol.subgraphs)} subgraphs for {inst.k} terminal sets")
    for d in sol.subgraphs:
        inst.graph.check_vertices(d)


def _cross_edge(g: Graph, subs, skip=lambda u, v: False):
    for i, di in enumerate(subs):
        for j in range(i + 1, len(subs)):
            dj = subs[j]
            for u in sorted(di):
                for v in sorted(g.neighbors(u) & dj):
                    if not skip(u, v):
                        return i, j, u, v
    return None


def verify_solution(inst: Instance, sol: Solution) -> Verdict:
    """Check the four solution clauses in order: (a) ``Z_i <= D^i``,
    (b) ``G[D^i]`` connected, (c) pairwise disjoint, (d) no edge between
    different ``D^i``."""
    _check_alignment(inst, sol)
    g = inst.graph
    view = g.view
    for i, (z, d) in enumerate(zip(inst.terminal_sets, sol.subgraphs)):
        if not z <= d:
            return Verdict(False, "a", f"D^{i + 1} misses terminals {sorted(z - d)}")
    for i, d in enumerate(sol.subgraphs):
        if not view.is_connected(view.mask(d)):
            return Verdict(False, "b", f"D^{i + 1} is not connected")
    subs = sol.subgraphs
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            common = subs[i] & subs[j]
            if common:
                return Verdict(False, "c", f"D^{i + 1} and D^{j + 1} share vertices {sorted(common)}")
    hit = _cross_edge(g, subs)
    if hit:
        i, j, u, v = hit
        return Verdict(False, "d", f"edge {u}-{v} joins D^{i + 1} and D^{j + 1}")
    return Verdict(True)


def _path_order(g: Graph, d: frozenset[int], s: int, t: int) -> list[int] | None:
    """Vertex order of ``G[d]`` as an s-t path, ignoring a direct s-t edge
    when the path has internal vertices."""
    if len(d) == 2:
        return [s, t] if g.has_edge(s, t) else None

    def nbrs(x):
        out = g.neighbors(x) & d
        if x == s:
            out -= {t}
        elif x == t:
            out -= {s}
        return out

    if len(nbrs(s)) != 1 or len(nbrs(t)) != 1:
        return None
    order = [s]
    prev, cur = None, s
    while cur != t:
        nxt = [y for y in nbrs(cur) if y != prev]
        if len(nxt) != 1:
            return None
        prev, cur = cur, nxt[0]
        if cur != t and len(nbrs(cur)) != 2:
            return None
        order.append(cur)
    return order if len(order) == len(d) else None


def verify_flexible_solution(inst: Instance, sol: Solution) -> Verdict:
    """Check flexibly mutually induced paths: each ``D^i`` is an s_i-t_i path,
    internal vertices are non-terminals, and the only edges between
    different paths join two terminals."""
    if any(len(z) != 2 for z in inst.terminal_sets):
        raise InvalidArgument("the flexible variant needs every terminal set to be a pair")
    _check_alignment(inst, sol)
    g = inst.graph
    terminals = inst.terminals
    for i, (z, d) in enumerate(zip(inst.terminal_sets, sol.subgraphs)):
        if not z <= d:
            return Verdict(False, "a", f"D^{i + 1} misses terminals {sorted(z - d)}")
        inner = (d - z) & terminals
        if inner:
            return Verdict(False, "a", f"D^{i + 1} routes through terminals {sorted(inner)}")
    for i, (z, d) in enumerate(zip(inst.terminal_sets, sol.subgraphs)):
        s, t = sorted(z)
        if _path_order(g, d, s, t) is None:
            return Verdict(False, "b", f"D^{i + 1} does not induce an {s}-{t} path")
    subs = sol.subgraphs
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            common = subs[i] & subs[j]
            if common:
                return Verdict(False, "c", f"D^{i + 1} and D^{j + 1} share vertices {sorted(common)}")
    hit = _cross_edge(g, subs, skip=lambda u, v: u in terminals and v in terminals)
    if hit:
        i, j, u, v = hit
        return Verdict(False, "d", f"edge {u}-{v} joins D^{i + 1} and D^{j + 1}")
    return Verdict(True)


# -- normalization ---------------------------------------------------------------

@dataclass(frozen=True)
class Solved:
    solution: Solution


@dataclass(frozen=True)
class No:
    reason: str


@dataclass(frozen=True)
class Reduced:
    """Equivalent instance with ``k >= 2``, every set of size at least 2, and
    an independent terminal union.

    ``provenance`` maps each surviving vertex to the original vertices merged
    into it; ``index_map[i]`` is the original index of reduced set ``i``;
    ``fixed`` holds the finished original-graph subgraphs of removed sets.
    """

    instance: Instance
    provenance: dict[int, frozenset[int]]
    index_map: tuple[int, ...]
    fixed: dict[int, frozenset[int]] = field(default_factory=dict)
    original_k: int = 0

    @property
    def old_to_new(self) -> dict[int, int]:
        return {old: new for new, olds in self.provenance.items() for old in olds}

    def lift(self, sol: Solution) -> Solution:
        """Map a solution of the reduced instance to the original instance."""
        parts: list[frozenset[int] | None] = [None] * self.original_k
        for idx, d in self.fixed.items():
            parts[idx] = d
        for i, d in enumerate(sol.subgraphs):
            parts[self.index_map[i]] = frozenset().union(*(self.provenance[v] for v in d))
        return Solution(parts)


def _lift_parts(provenance, fixed, original_k, assigned: dict[int, frozenset[int]]) -> Solution:
    parts = [None] * original_k
    for idx, d in fixed.items():
        parts[idx] = d
    for idx, d in assigned.items():
        parts[idx] = frozenset().union(*(provenance[v] for v in d))
    return Solution(parts)


def normalize(inst: Instance) -> Solved | Reduced | No:
    """Contract edges inside terminal sets, reject adjacent terminals of
    different sets, and remove singleton sets together with their closed
    neighbourhoods.  Instances left with at most one set are solved directly.
    """
    g = inst.graph
    provenance = {v: frozenset([v]) for v in g.vertices}
    sets = [set(z) for z in inst.terminal_sets]
    for i in range(len(sets)):
        while True:
            edge = next(((u, v) for u in sorted(sets[i]) for v in sorted(g.neighbors(u) & sets[i])), None)
            if edge is None:
                break
            u, v = edge
            g, w = contract_edge(g, u, v)
            provenance[w] = provenance.pop(u) | provenance.pop(v)
            sets[i] -= {u, v}
            sets[i].add(w)
    owner = {v: i for i, z in enumerate(sets) for v in z}
    for v, i in owner.items():
        for y in g.neighbors(v):
            j = owner.get(y)
            if j is not None and j != i:
                return No(f"terminal sets {i + 1} and {j + 1} are adjacent")
    fixed: dict[int, frozenset[int]] = {}
    doomed: set[int] = set()
    for i, z in enumerate(sets):
        if len(z) == 1:
            (v,) = z
            fixed[i] = provenance[v]
            doomed |= g.neighbors(v) | {v}
    g = g.remove_vertices(doomed)
    provenance = {v: provenance[v] for v in g.vertices}
    remaining = [i for i, z in enumerate(sets) if len(z) >= 2]
    if len(remaining) == 0:
        return Solved(_lift_parts(provenance, fixed, inst.k, {}))
    if len(remaining) == 1:
        i = remaining[0]
        comp = component_containing(g, sets[i])
        if comp is None:
            return No(f"terminal set {i + 1} is split over several components")
        return Solved(_lift_parts(provenance, fixed, inst.k, {i: comp}))
    reduced = Instance(g, [sets[i] for i in remaining])
    return Reduced(reduced, provenance, tuple(remaining), fixed, inst.k)


def solution_size_bound(h: Pattern, inst: Instance, i: int) -> int:
    """Size cap ``(2|V(H)| - 1) |Z_i|`` that some solution respects when G is H-free."""
    if h.linear_forest is None:
        raise InvalidArgument(f"{h} is not a linear forest")
    if __debug__ and len(inst.graph) <= 16 and not is_h_free(inst.graph, h):
        raise InvalidArgument(f"graph is not {h}-free")
    return (2 * h.order - 1) * len(inst.terminal_sets[i])


# -- JSON files ----------------------------------------------------------------------

def parse_terminals(text: str) -> list[list[int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"terminal file is not JSON: {exc}") from None
    sets = data.get("sets") if isinstance(data, dict) else None
    if not isinstance(sets, list) or not all(
            isinstance(z, list) and all(isinstance(v, int) for v in z) for z in sets):
        raise ParseError('terminal file must look like {"sets": [[ids...], ...]}')
    return sets


def read_instance(graph_path, terminals_path) -> Instance:
    from .graph import read_graph
    g = read_graph(graph_path)
    with open(terminals_path) as fh:
        sets = parse_terminals(fh.read())
    return Instance(g, sets)


def terminals_json(inst: Instance) -> str:
    return json.dumps({"sets": [sorted(z) for z in inst.terminal_sets]})


def solution_json(sol: Solution | None, provenance: dict[int, frozenset[int]] | None = None) -> dict:
    if sol is None:
        return {"status": "no"}
    out = {"status": "yes", "subgraphs": [sorted(d) for d in sol.subgraphs]}
    if provenance is not None:
        out["provenance"] = {str(k): sorted(v) for k, v in sorted(provenance.items())}
    return out


def parse_solution(text: str) -> Solution | None:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"solution file is not JSON: {exc}") from None
    if not isinstance(data, dict) or data.get("status") not in ("yes", "no"):
        raise ParseError('solution file needs "status": "yes" or "no"')
    if data["status"] == "no":
        return None
    subs = data.get("subgraphs")
    if not isinstance(subs, list) or not all(isinstance(d, list) for d in subs):
        raise ParseError('"subgraphs" must be a list of id lists')
    return Solution(subs)
