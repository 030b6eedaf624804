"""Forbidden induced subgraphs: parsing, containment search, and the
complexity classification of the terminal-connection problems on H-free
graphs.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import ParseError
from .graph import (Graph, complete_bipartite_graph, complete_graph, connected_components,
                    cycle_graph, disjoint_union, path_graph)


@dataclass(frozen=True)
class Pattern:
    """A pattern graph H.  ``linear_forest`` lists the path orders (ascending)
    when every component of H is a path, and is None otherwise."""

    graph: Graph
    linear_forest: tuple[int, ...] | None
    spec: str = ""

    @property
    def order(self) -> int:
        return len(self.graph)

    def __str__(self):
        return self.spec or f"H({len(self.graph)} vertices)"


def _linear_forest_orders(h: Graph) -> tuple[int, ...] | None:
    orders = []
    for comp in connected_components(h):
        degs = [len(h.neighbors(v) & comp) for v in comp]
        edges = sum(degs) // 2
        if edges != len(comp) - 1 or max(degs, default=0) > 2:
            return None
        orders.append(len(comp))
    return tuple(sorted(orders))


def pattern_from_graph(h: Graph, spec: str = "") -> Pattern:
    return Pattern(h, _linear_forest_orders(h), spec)


def linear_forest(*orders: int) -> Pattern:
    """Disjoint union of paths with the given orders, e.g. ``linear_forest(1, 3, 4)``."""
    if not orders or any(r < 1 for r in orders):
        raise ValueError("path orders must be positive")
    g = disjoint_union(path_graph(r) for r in orders)
    ordered = sorted(orders)
    parts = []
    for r in sorted(set(ordered)):
        c = ordered.count(r)
        parts.append(f"{c}P{r}" if c > 1 else f"P{r}")
    return Pattern(g, tuple(ordered), "+".join(parts))


_TERM = re.compile(r"(\d*)P(\d+)|C(\d+)|K(\d+),(\d+)|K(\d+)|claw")


def parse_pattern(spec: str) -> Pattern:
    """Parse ``term ('+' term)*`` with terms ``[count]P<r>``, ``C<r>``,
    ``K<r>``, ``K<a>,<b>`` and ``claw``."""
    text = spec.replace(" ", "")
    if not text:
        raise ParseError("empty pattern", 0)
    pieces: list[Graph] = []
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if m is None:
            raise ParseError(f"bad pattern term in {spec!r}", pos)
        count, p_order, c_order, ka, kb, k_order = m.groups()
        if p_order is not None:
            times = int(count) if count else 1
            if times < 1 or int(p_order) < 1:
                raise ParseError(f"path term needs positive count and order in {spec!r}", pos)
            pieces.extend(path_graph(int(p_order)) for _ in range(times))
        elif c_order is not None:
            if int(c_order) < 3:
                raise ParseError("cycles need at least 3 vertices", pos)
            pieces.append(cycle_graph(int(c_order)))
        elif ka is not None:
            if int(ka) < 1 or int(kb) < 1:
                raise ParseError("bipartite sides must be positive", pos)
            pieces.append(complete_bipartite_graph(int(ka), int(kb)))
        elif k_order is not None:
            if int(k_order) < 1:
                raise ParseError("cliques need at least one vertex", pos)
            pieces.append(complete_graph(int(k_order)))
        else:
            pieces.append(complete_bipartite_graph(1, 3))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise ParseError(f"expected '+' in {spec!r}", pos)
        pos += 1
    return pattern_from_graph(disjoint_union(pieces), text)


# -- induced containment ---------------------------------------------------------

def _search_order(h: Graph, start: list[int]) -> list[int]:
    """Pattern vertices in an order where every vertex after the first of its
    component has an earlier neighbour.  Components with more vertices go
    first; ``start`` vertices lead."""
    order: list[int] = []
    seen: set[int] = set()

    def bfs(roots):
        queue = [r for r in roots if r not in seen]
        seen.update(queue)
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for y in sorted(h.neighbors(x)):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        order.extend(queue)

    if start:
        bfs(start)
    comps = sorted(connected_components(h), key=lambda c: (-len(c), min(c)))
    for comp in comps:
        if comp <= seen:
            continue
        root = min(comp, key=lambda v: (len(h.neighbors(v)), v))
        bfs([root])
    return order


def _match(g: Graph, h: Graph, anchor: dict[int, int] | None = None) -> dict[int, int] | None:
    """Backtracking search for an induced embedding of ``h`` into ``g``,
    optionally extending a fixed partial map ``anchor`` (pattern -> host)."""
    if len(h) > len(g):
        return None
    if len(h) == 0:
        return {}
    view = g.view
    adj = view.adj
    anchor = anchor or {}
    order = _search_order(h, list(anchor))
    index = {p: i for i, p in enumerate(order)}
    links = []
    for i, p in enumerate(order):
        earlier_nb = [index[q] for q in h.neighbors(p) if index[q] < i]
        earlier_non = [j for j in range(i) if j not in earlier_nb]
        links.append((earlier_nb, earlier_non))
    image = [0] * len(order)  # bit of the host vertex per position

    fixed = {}
    for p, v in anchor.items():
        if v not in g:
            return None
        fixed[index[p]] = 1 << view.pos[v]

    def candidates(i, used):
        nb, non = links[i]
        cand = view.full & ~used
        for j in nb:
            cand &= adj[image[j].bit_length() - 1]
        for j in non:
            cand &= ~adj[image[j].bit_length() - 1]
        return cand

    def rec(i, used):
        if i == len(order):
            return True
        cand = candidates(i, used)
        if i in fixed:
            cand &= fixed[i]
        while cand:
            b = cand & -cand
            cand ^= b
            image[i] = b
            if rec(i + 1, used | b):
                return True
        return False

    if not rec(0, 0):
        return None
    return {p: view.ids[image[i].bit_length() - 1] for i, p in enumerate(order)}


def contains_induced(g: Graph, h: Pattern | Graph) -> frozenset[int] | None:
    """A vertex set ``S`` with ``G[S]`` isomorphic to ``H``, or None."""
    hg = h.graph if isinstance(h, Pattern) else h
    emb = _match(g, hg)
    return None if emb is None else frozenset(emb.values())


def is_h_free(g: Graph, h: Pattern | Graph) -> bool:
    return contains_induced(g, h) is None


def contains_induced_through_edge(g: Graph, h: Pattern | Graph, u: int, v: int) -> frozenset[int] | None:
    """Witness of an induced ``H`` containing both ``u`` and ``v``, where
    ``uv`` is an edge of ``G``.

    Used for incremental freeness checks: after adding ``uv`` to an H-free
    graph, every new induced copy of H contains ``uv`` as one of its edges.
    """
    hg = h.graph if isinstance(h, Pattern) else h
    for a, b in hg.edges():
        for x, y in ((a, b), (b, a)):
            emb = _match(g, hg, {x: u, y: v})
            if emb is not None:
                return frozenset(emb.values())
    return None


# -- classification -----------------------------------------------------------------

class Complexity(enum.Enum):
    POLYNOMIAL = "PolynomialTime"
    QUASIPOLYNOMIAL = "Quasipolynomial"
    NP_COMPLETE = "NPComplete"
    OPEN = "Open"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EllFixed:
    """Maximum terminal-set size fixed, number of sets part of the input."""
    ell: int = 2


@dataclass(frozen=True)
class KFixed:
    """Number of terminal sets fixed."""
    k: int = 2


@dataclass(frozen=True)
class General:
    """Both the number and the sizes of the terminal sets are part of the input."""


GENERAL = General()


@dataclass(frozen=True)
class DichotomyVerdict:
    status: Complexity
    citation: str


def sp3_p6(s: int) -> Pattern:
    return linear_forest(*([3] * s), 6)


def sp1_p5(s: int) -> Pattern:
    return linear_forest(*([1] * s), 5)


def sp1_p6(s: int) -> Pattern:
    return linear_forest(*([1] * s), 6)


def sp1_p3_p4(s: int) -> Pattern:
    return linear_forest(*([1] * s), 3, 4)


def sp1_2p4(s: int) -> Pattern:
    return linear_forest(*([1] * s), 4, 4)


def is_induced_in_family(h: Pattern, family) -> bool:
    """``H`` is an induced subgraph of some member of ``family(s)``.

    Every family here grows by adding components, so testing the member
    with ``s = |V(H)|`` decides the question.
    """
    return contains_induced(family(h.order).graph, h) is not None


def smallest_member(h: Pattern, family) -> int | None:
    """Least ``s`` with ``H`` induced in ``family(s)``, or None."""
    for s in range(h.order + 1):
        if contains_induced(family(s).graph, h) is not None:
            return s
    return None


def path_bound(h: Pattern) -> int:
    """Order of the shortest path containing the linear forest ``H`` as an induced subgraph."""
    if h.linear_forest is None:
        raise ValueError(f"{h} is not a linear forest")
    return sum(h.linear_forest) + len(h.linear_forest) - 1


def _is_sp1_p6(h: Pattern) -> bool:
    lf = h.linear_forest
    return lf is not None and lf[-1] == 6 and all(r == 1 for r in lf[:-1])


def classify(h: Pattern, mode=GENERAL) -> DichotomyVerdict:
    """Complexity of the problem on H-free graphs for the given regime."""
    linear = h.linear_forest is not None
    if isinstance(mode, EllFixed):
        if not linear:
            return DichotomyVerdict(Complexity.NP_COMPLETE, "fixed ell: H is not a linear forest")
        if is_induced_in_family(h, sp3_p6):
            return DichotomyVerdict(Complexity.POLYNOMIAL, "fixed ell: H induced in sP3+P6")
        return DichotomyVerdict(Complexity.QUASIPOLYNOMIAL, "fixed ell: linear forest outside sP3+P6")
    if isinstance(mode, KFixed):
        if linear and is_induced_in_family(h, sp1_2p4):
            return DichotomyVerdict(Complexity.POLYNOMIAL, "fixed k: H induced in sP1+2P4")
        if linear and is_induced_in_family(h, sp1_p6):
            return DichotomyVerdict(Complexity.POLYNOMIAL, "fixed k: H induced in sP1+P6")
        reason = "not a linear forest" if not linear else "contains 3P2 or P7"
        return DichotomyVerdict(Complexity.NP_COMPLETE, f"fixed k: {reason}")
    if isinstance(mode, General):
        if not linear:
            return DichotomyVerdict(Complexity.NP_COMPLETE, "general: H is not a linear forest")
        if is_induced_in_family(h, sp1_p5):
            return DichotomyVerdict(Complexity.POLYNOMIAL, "general: H induced in sP1+P5")
        if is_induced_in_family(h, sp1_p3_p4):
            return DichotomyVerdict(Complexity.POLYNOMIAL, "general: H induced in sP1+P3+P4")
        if _is_sp1_p6(h):
            return DichotomyVerdict(Complexity.OPEN, "general: H = sP1+P6 (equivalent to P6)")
        return DichotomyVerdict(Complexity.NP_COMPLETE, "general: contains 3P2, P7 or 2P4")
    raise TypeError(f"unknown mode {mode!r}")
