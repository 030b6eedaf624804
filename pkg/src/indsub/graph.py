"""Simple undirected graphs with stable vertex ids, and the primitive
transformations the solvers and reductions are built from.

Graphs are immutable.  Every transformation returns a new graph and keeps
the ids of untouched vertices, so sets computed on a derived graph can be
mapped back to the graph it came from.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from collections.abc import Iterable

from .errors import InvalidArgument, ParseError, ResourceLimit


class Graph:
    """A simple undirected graph on non-negative integer vertex ids.

    Vertex iteration is always in ascending id order and neighbour sets are
    frozensets, so any algorithm that walks ``sorted(...)`` views is
    deterministic.
    """

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = (),
                 labels: dict[int, str] | None = None):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise InvalidArgument(f"vertex ids must be non-negative integers, got {v!r}")
            adj.setdefault(v, set())
        for u, v in edges:
            if u == v:
                raise InvalidArgument(f"self-loop at {u}")
            if u not in adj or v not in adj:
                raise InvalidArgument(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(adj[v]) for v in sorted(adj)}
        self._labels = {v: str(t) for v, t in (labels or {}).items() if v in self._adj}
        self._view = None

    @classmethod
    def _from_adj(cls, adj: dict[int, frozenset], labels=None) -> Graph:
        g = cls.__new__(cls)
        g._adj = {v: adj[v] for v in sorted(adj)}
        g._labels = dict(labels or {})
        g._view = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Graph on vertices ``0..n-1``."""
        return cls(range(n), edges)

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self._adj for v in sorted(self._adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def label(self, v: int) -> str | None:
        return self._labels.get(v)

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise InvalidArgument(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self):
        return iter(self._adj)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):
        return hash((tuple(self._adj), tuple(self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.num_edges})"

    def check_vertices(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        missing = [v for v in s if v not in self._adj]
        if missing:
            raise InvalidArgument(f"unknown vertex ids {sorted(missing)}")
        return s

    def next_id(self) -> int:
        return (max(self._adj) + 1) if self._adj else 0

    def with_labels(self, labels: dict[int, str]) -> Graph:
        merged = dict(self._labels)
        merged.update({v: str(t) for v, t in labels.items() if v in self._adj})
        return Graph._from_adj(self._adj, merged)

    def remove_vertices(self, s: Iterable[int]) -> Graph:
        """``G - S``; ids in ``s`` that are not vertices are ignored."""
        s = set(s)
        if not s:
            return self
        adj = {v: nb - s for v, nb in self._adj.items() if v not in s}
        return Graph._from_adj(adj, {v: t for v, t in self._labels.items() if v not in s})

    @property
    def view(self) -> BitView:
        if self._view is None:
            self._view = BitView(self)
        return self._view


class BitView:
    """Bitmask encoding of a graph: vertex ``ids[i]`` is bit ``i``."""

    __slots__ = ("ids", "pos", "adj", "full")

    def __init__(self, g: Graph):
        self.ids = g.vertices
        self.pos = {v: i for i, v in enumerate(self.ids)}
        pos = self.pos
        self.adj = []
        for v in self.ids:
            m = 0
            for w in g.neighbors(v):
                m |= 1 << pos[w]
            self.adj.append(m)
        self.full = (1 << len(self.ids)) - 1

    def mask(self, s: Iterable[int]) -> int:
        m = 0
        pos = self.pos
        for v in s:
            m |= 1 << pos[v]
        return m

    def members(self, m: int) -> frozenset[int]:
        ids = self.ids
        out = []
        while m:
            b = m & -m
            out.append(ids[b.bit_length() - 1])
            m ^= b
        return frozenset(out)

    def open_nbhd(self, m: int) -> int:
        adj = self.adj
        out = 0
        x = m
        while x:
            b = x & -x
            out |= adj[b.bit_length() - 1]
            x ^= b
        return out & ~m

    def closed_nbhd(self, m: int) -> int:
        return self.open_nbhd(m) | m

    def reach(self, start: int, within: int) -> int:
        """Vertices of ``within`` reachable from ``start`` inside ``within``."""
        adj = self.adj
        seen = start & within
        todo = seen
        while todo:
            b = todo & -todo
            todo ^= b
            new = adj[b.bit_length() - 1] & within & ~seen
            seen |= new
            todo |= new
        return seen

    def is_connected(self, m: int) -> bool:
        if not m:
            return True
        return self.reach(m & -m, m) == m


def lowbit_index(m: int) -> int:
    return (m & -m).bit_length() - 1


def popcount(m: int) -> int:
    return bin(m).count("1")


# -- constructors ------------------------------------------------------------

def path_graph(n: int, start: int = 0) -> Graph:
    return Graph(range(start, start + n), [(i, i + 1) for i in range(start, start + n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidArgument("a cycle needs at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), itertools.combinations(range(n), 2))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite_graph(1, leaves)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    """Disjoint union with vertices renumbered consecutively from 0."""
    vertices, edges, offset = [], [], 0
    for h in graphs:
        remap = {v: offset + i for i, v in enumerate(h.vertices)}
        vertices.extend(remap.values())
        edges.extend((remap[u], remap[v]) for u, v in h.edges())
        offset += len(h)
    return Graph(vertices, edges)


def relabel_consecutive(g: Graph) -> tuple[Graph, dict[int, int]]:
    remap = {v: i for i, v in enumerate(g.vertices)}
    h = Graph(range(len(g)), [(remap[u], remap[v]) for u, v in g.edges()],
              {remap[v]: t for v, t in g.labels.items()})
    return h, remap


# -- transformations -----------------------------------------------------------

def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    s = g.check_vertices(s)
    adj = {v: g.neighbors(v) & s for v in s}
    return Graph._from_adj(adj, {v: t for v, t in g.labels.items() if v in s})


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, int]:
    """Contract ``uv`` into a fresh vertex ``w = max id + 1``; returns ``(G/uv, w)``."""
    if not g.has_edge(u, v):
        raise InvalidArgument(f"({u}, {v}) is not an edge")
    w = g.next_id()
    merged = (g.neighbors(u) | g.neighbors(v)) - {u, v}
    adj = {}
    for x, nb in g._adj.items():
        if x in (u, v):
            continue
        if u in nb or v in nb:
            nb = (nb - {u, v}) | {w}
        adj[x] = nb
    adj[w] = frozenset(merged)
    labels = {x: t for x, t in g.labels.items() if x not in (u, v)}
    return Graph._from_adj(adj, labels), w


def subdivide_edges(g: Graph, t: int) -> Graph:
    """Replace every edge by a path with ``t`` new internal vertices."""
    if t < 0:
        raise InvalidArgument("subdivision count must be non-negative")
    if t == 0:
        return g
    nxt = g.next_id()
    vertices = list(g.vertices)
    edges = []
    labels = g.labels
    for u, v in g.edges():
        chain = list(range(nxt, nxt + t))
        nxt += t
        vertices.extend(chain)
        for i, x in enumerate(chain):
            labels[x] = f"sub({u},{v})#{i}"
        seq = [u, *chain, v]
        edges.extend(zip(seq, seq[1:]))
    return Graph(vertices, edges, labels)


def line_graph(g: Graph) -> tuple[Graph, dict[tuple[int, int], int]]:
    """Line graph on ids ``0..m-1``; the map sends each edge ``(u, v)``, u < v, to its vertex."""
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    incident: dict[int, list[int]] = {v: [] for v in g.vertices}
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    new_edges = set()
    for inc in incident.values():
        new_edges.update(itertools.combinations(inc, 2))
    labels = {i: f"edge({u},{v})" for (u, v), i in index.items()}
    return Graph(range(len(edges)), sorted(new_edges), labels), index


# -- neighbourhoods and connectivity ------------------------------------------

def closed_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = g.check_vertices(s)
    out = set(s)
    for v in s:
        out |= g.neighbors(v)
    return frozenset(out)


def open_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = g.check_vertices(s)
    return closed_neighborhood(g, s) - s


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their smallest vertex id."""
    seen: set[int] = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        comp = {root}
        todo = deque([root])
        while todo:
            x = todo.popleft()
            for y in g.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    todo.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected_set(g: Graph, s: Iterable[int]) -> bool:
    """True iff ``G[s]`` is connected (the empty set counts as connected)."""
    s = g.check_vertices(s)
    view = g.view
    return view.is_connected(view.mask(s))


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    s = g.check_vertices(s)
    return all(not (g.neighbors(v) & s) for v in s)


def component_containing(g: Graph, s: Iterable[int]) -> frozenset[int] | None:
    """The component holding all of ``s``, or None if ``s`` is split (or empty)."""
    s = g.check_vertices(s)
    if not s:
        return None
    view = g.view
    comp = view.reach(view.mask([min(s)]), view.full)
    want = view.mask(s)
    return view.members(comp) if comp & want == want else None


class Acyclic(enum.Enum):
    """Girth of a forest."""

    ACYCLIC = "acyclic"

    def __repr__(self):
        return "ACYCLIC"


ACYCLIC = Acyclic.ACYCLIC


def girth(g: Graph) -> int | Acyclic:
    best = None
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        todo = deque([root])
        while todo:
            x = todo.popleft()
            if best is not None and 2 * dist[x] >= best:
                break
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    todo.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return ACYCLIC if best is None else best


def min_connected_dominating_set(g: Graph, limit: int = 16) -> frozenset[int]:
    """Minimum connected dominating set by subsets of increasing size.

    Among minimum sets the lexicographically smallest id tuple is returned.
    """
    if len(g) == 0 or not is_connected(g):
        raise InvalidArgument("connected dominating sets need a connected, non-empty graph")
    if len(g) > limit:
        raise ResourceLimit(f"graph has {len(g)} vertices, exhaustive limit is {limit}")
    view = g.view
    n = len(view.ids)
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            m = 0
            for i in combo:
                m |= 1 << i
            if view.closed_nbhd(m) == view.full and view.is_connected(m):
                return view.members(m)
    raise AssertionError("unreachable: the whole vertex set dominates")


# -- connected supersets ---------------------------------------------------------

def connected_supersets(g: Graph, required: Iterable[int], allowed: Iterable[int] | None = None,
                        max_size: int | None = None, max_extra: int | None = None,
                        minimal: bool = False, tick=None) -> list[frozenset[int]]:
    """All connected vertex sets ``X`` with ``required <= X <= allowed``.

    ``max_size`` caps ``|X|``, ``max_extra`` caps ``|X - required|``.  With
    ``minimal=True`` only inclusion-minimal sets are kept.  Results are
    ordered by size, then by sorted id tuple.  ``tick`` is called once per
    search node (budget hook).
    """
    required = g.check_vertices(required)
    if not required:
        raise InvalidArgument("required set must be non-empty")
    view = g.view
    allowed_mask = view.full if allowed is None else view.mask(set(allowed) & set(g.vertices))
    masks = _superset_masks(view, view.mask(required), allowed_mask, max_size, max_extra, tick, minimal)
    if minimal:
        masks = minimal_masks(masks)
    found = [view.members(m) for m in masks]
    found.sort(key=lambda s: (len(s), sorted(s)))
    return found


def _superset_masks(view: BitView, req: int, allowed: int, max_size, max_extra, tick,
                    minimal: bool = False) -> list[int]:
    if req & ~allowed:
        return []
    nreq = popcount(req)
    limit = len(view.ids)
    if max_size is not None:
        limit = min(limit, max_size)
    if max_extra is not None:
        limit = min(limit, nreq + max_extra)
    if nreq > limit:
        return []
    adj = view.adj
    out = []
    seed = req & -req

    def rec(s, size, frontier, excluded):
        if tick is not None:
            tick()
        missing = req & ~s
        if not missing:
            out.append(s)
            if minimal:
                # every extension of s is a proper superset of s
                return
        elif size + popcount(missing) > limit:
            return
        if size >= limit:
            return
        if missing and view.reach(s, allowed & ~excluded) & missing != missing:
            return
        cand = frontier & ~excluded
        ex = excluded
        while cand:
            b = cand & -cand
            cand ^= b
            ns = s | b
            rec(ns, size + 1, (frontier | adj[b.bit_length() - 1]) & allowed & ~ns, ex)
            ex |= b
            if b & req:
                break

    rec(seed, 1, adj[seed.bit_length() - 1] & allowed & ~seed, 0)
    return out


def minimal_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal members of a family of bitmasks."""
    kept: list[int] = []
    for m in sorted(set(masks), key=popcount):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


# -- text format -------------------------------------------------------------------

def format_graph(g: Graph) -> str:
    ids = g.vertices
    lines = []
    if ids == tuple(range(len(ids))):
        lines.append(f"{len(g)} {g.num_edges}")
    else:
        lines.append(f"{len(g)} {g.num_edges} ids explicit")
        lines.append(" ".join(map(str, ids)))
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty graph file")
    lineno, head = rows[0]
    explicit = head[2:] == ["ids", "explicit"]
    if len(head) != 2 and not explicit:
        raise ParseError("header must be 'n m' or 'n m ids explicit'", f"line {lineno}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("non-integer header", f"line {lineno}") from None
    body = rows[1:]
    if explicit:
        if not body:
            raise ParseError("missing vertex id line", f"line {lineno}")
        lineno, ids_row = body[0]
        try:
            vertices = [int(x) for x in ids_row]
        except ValueError:
            raise ParseError("non-integer vertex id", f"line {lineno}") from None
        if len(vertices) != n or len(set(vertices)) != n:
            raise ParseError(f"expected {n} distinct vertex ids", f"line {lineno}")
        body = body[1:]
    else:
        vertices = list(range(n))
    if len(body) != m:
        raise ParseError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for lineno, row in body:
        if len(row) != 2:
            raise ParseError("edge lines hold exactly two ids", f"line {lineno}")
        try:
            edges.append((int(row[0]), int(row[1])))
        except ValueError:
            raise ParseError("non-integer vertex id", f"line {lineno}") from None
    try:
        return Graph(vertices, edges)
    except InvalidArgument as exc:
        raise ParseError(str(exc)) from None


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))
