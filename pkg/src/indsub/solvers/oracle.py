"""Exact exponential-time reference solvers.

They share no search code with the specialised algorithms: candidate parts
are built by growing induced paths from the current set towards the next
missing terminal, and parts are then combined by backtracking.
"""

from __future__ import annotations

from ..errors import InvalidArgument, ResourceLimit
from ..graph import popcount
from ..instance import Instance, Solution, solution_size_bound, verify_flexible_solution
from ..patterns import Pattern
from .common import Budget, Meter, SolveAnswer, Status, run


def _connectors(view, req: int, allowed: int, cap: int, meter: Meter) -> list[int]:
    """Inclusion-minimal connected sets ``req <= C <= allowed`` with ``|C| <= cap``.

    Every minimal set arises by repeatedly attaching a shortest path (inside
    the set) from the part built so far to its smallest missing terminal;
    such a path is induced and only its first vertex touches the part.
    """
    adj = view.adj
    found: set[int] = set()
    seen: set[int] = set()

    def grow(c: int) -> None:
        if c in seen:
            return
        seen.add(c)
        meter.tick()
        missing = req & ~c
        if not missing:
            found.add(c)
            return
        if popcount(c) + popcount(missing) > cap:
            return
        target = missing & -missing
        touch = 0
        x = c
        while x:
            b = x & -x
            x ^= b
            touch |= adj[b.bit_length() - 1]
        touch &= ~c
        room = allowed & ~c

        def walk(path: int, last: int, banned: int, size: int) -> None:
            meter.tick()
            if last == target:
                grow(c | path)
                return
            if size >= cap:
                return
            li = last.bit_length() - 1
            nxt = adj[li] & room & ~touch & ~banned
            while nxt:
                b = nxt & -nxt
                nxt ^= b
                walk(path | b, b, banned | adj[li] | last, size + 1)

        starts = touch & room
        while starts:
            b = starts & -starts
            starts ^= b
            walk(b, b, 0, popcount(c) + 1)

    grow(req & -req)
    kept: list[int] = []
    for m in sorted(found, key=lambda m: (popcount(m), m)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _combine(view, cands: list[list[int]], meter: Meter, induced: bool):
    """First combination, one candidate per set, that is pairwise disjoint and
    (when ``induced``) free of edges between parts; None if there is none."""
    k = len(cands)
    order = sorted(range(k), key=lambda i: (len(cands[i]), i))
    picked = [0] * k

    def closed(m: int) -> int:
        out = m
        x = m
        while x:
            b = x & -x
            x ^= b
            out |= view.adj[b.bit_length() - 1]
        return out

    def rec(pos: int, blocked: int) -> bool:
        if pos == k:
            return True
        i = order[pos]
        for m in cands[i]:
            meter.tick()
            if m & blocked:
                continue
            picked[i] = m
            if rec(pos + 1, blocked | (closed(m) if induced else m)):
                return True
        return False

    if not rec(0, 0):
        return None
    return [view.members(m) for m in picked]


def _caps(inst: Instance, pattern: Pattern | None, meter: Meter) -> list[int]:
    n = len(inst.graph)
    if pattern is None:
        return [meter.cap(n)] * inst.k
    return [meter.cap(min(n, solution_size_bound(pattern, inst, i))) for i in range(inst.k)]


def _idcs(inst: Instance, meter: Meter, pattern: Pattern | None, induced: bool) -> Solution | None:
    view = inst.graph.view
    masks = [view.mask(z) for z in inst.terminal_sets]
    caps = _caps(inst, pattern, meter)
    cands = []
    for i, req in enumerate(masks):
        others = 0
        for j, m in enumerate(masks):
            if j != i:
                others |= m
        if induced:
            near = others
            x = others
            while x:
                b = x & -x
                x ^= b
                near |= view.adj[b.bit_length() - 1]
            allowed = view.full & ~near
        else:
            allowed = view.full & ~others
        if req & ~allowed:
            return None
        cands.append(_connectors(view, req, allowed, caps[i], meter))
        if not cands[-1]:
            return None
    parts = _combine(view, cands, meter, induced)
    return None if parts is None else Solution(parts)


def oracle_idcs(inst: Instance, budget: Budget | None = None, pattern: Pattern | None = None) -> SolveAnswer:
    """Exact answer for Induced Disjoint Connected Subgraphs.

    When ``pattern`` is a linear forest the graph is assumed to be
    pattern-free and parts are capped at ``(2|V(H)|-1)|Z_i|`` vertices.
    """
    return run(inst, "oracle", lambda i, m: _idcs(i, m, pattern, True), budget)


def oracle_disjoint_cs(inst: Instance, budget: Budget | None = None) -> SolveAnswer:
    """Exact answer for the non-induced variant: parts only need to be disjoint."""
    meter = Meter(budget)
    try:
        sol = _idcs(inst, meter, None, False)
    except ResourceLimit as exc:
        return SolveAnswer(Status.GAVE_UP, reason=str(exc), route="oracle-disjoint", branches=meter.count)
    if sol is None:
        return SolveAnswer(Status.NO, route="oracle-disjoint", branches=meter.count)
    _check_disjoint(inst, sol)
    return SolveAnswer(Status.YES, sol, route="oracle-disjoint", branches=meter.count)


def _check_disjoint(inst: Instance, sol: Solution) -> None:
    view = inst.graph.view
    used = 0
    for z, d in zip(inst.terminal_sets, sol.subgraphs):
        m = view.mask(d)
        if not z <= d or not view.is_connected(m) or m & used:
            raise AssertionError("disjoint oracle produced an invalid witness")
        used |= m


# -- flexible paths -----------------------------------------------------------------

def _flexible(inst: Instance, meter: Meter) -> Solution | None:
    g = inst.graph
    view = g.view
    adj = view.adj
    terminals = view.mask(inst.terminals)
    paths: list[list[tuple[int, int]]] = []  # per pair: (vertex mask, inner mask)
    for z in inst.terminal_sets:
        s, t = sorted(z)
        sb, tb = 1 << view.pos[s], 1 << view.pos[t]
        if adj[view.pos[s]] & tb:
            paths.append([(sb | tb, 0)])
            continue
        foreign = terminals & ~(sb | tb)
        near_foreign = 0
        x = foreign
        while x:
            b = x & -x
            x ^= b
            near_foreign |= adj[b.bit_length() - 1]
        room = view.full & ~terminals & ~near_foreign
        found = []

        def walk(path: int, last: int, banned: int) -> None:
            meter.tick()
            li = last.bit_length() - 1
            if last != sb and adj[li] & tb:
                found.append((path | tb, path & ~sb))
                return
            nxt = adj[li] & room & ~banned & ~path
            while nxt:
                b = nxt & -nxt
                nxt ^= b
                # induced: the new vertex sees nothing on the path but ``last``,
                # and only the final inner vertex may see t
                walk(path | b, b, banned | adj[li] | last)

        # inner vertices adjacent to s other than the first are excluded via banned
        walk(sb, sb, tb)
        found.sort(key=lambda p: (popcount(p[0]), p[0]))
        if not found:
            return None
        paths.append(found)

    order = sorted(range(len(paths)), key=lambda i: (len(paths[i]), i))
    picked = [0] * len(paths)

    def closed(m: int) -> int:
        out = m
        x = m
        while x:
            b = x & -x
            x ^= b
            out |= adj[b.bit_length() - 1]
        return out

    def rec(pos: int, blocked: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for full, inner in paths[i]:
            meter.tick()
            if inner & blocked:
                continue
            picked[i] = full
            if rec(pos + 1, blocked | closed(inner)):
                return True
        return False

    if not rec(0, 0):
        return None
    return Solution(view.members(m) for m in picked)


def oracle_flexible_idp(inst: Instance, budget: Budget | None = None) -> SolveAnswer:
    """Exact answer for Flexibly Induced Disjoint Paths (every set a pair)."""
    if any(len(z) != 2 for z in inst.terminal_sets):
        raise InvalidArgument("flexible paths need every terminal set to be a pair")
    meter = Meter(budget)
    try:
        sol = _flexible(inst, meter)
    except ResourceLimit as exc:
        return SolveAnswer(Status.GAVE_UP, reason=str(exc), route="oracle-flexible", branches=meter.count)
    if sol is None:
        return SolveAnswer(Status.NO, route="oracle-flexible", branches=meter.count)
    verdict = verify_flexible_solution(inst, sol)
    if not verdict:
        raise AssertionError(f"flexible oracle produced an invalid witness: {verdict.detail}")
    return SolveAnswer(Status.YES, sol, route="oracle-flexible", branches=meter.count)
