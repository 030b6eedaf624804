"""Fixed-k and P3+P4 algorithms built on guessing small connected dominating sets."""

from __future__ import annotations

from itertools import combinations

from ..errors import InvalidArgument
from ..graph import Graph, component_containing
from ..instance import Instance, Solution
from ..patterns import sp1_2p4, sp1_p3_p4, sp1_p6
from .blobsolvers import _p5
from .common import (Budget, Meter, SolveAnswer, compatible_choices, descending, finish_with,
                     normalized, part_candidates, part_room, require_free, run)
from .nearly import BASES, nearly


def _drop_shared(inst: Instance) -> Instance:
    """Delete non-terminals adjacent to two different terminal sets."""
    g = inst.graph
    owner = inst.owner()
    shared = []
    for v in g.vertices:
        if v in owner:
            continue
        seen = {owner[w] for w in g.neighbors(v) if w in owner}
        if len(seen) >= 2:
            shared.append(v)
    return Instance(g.remove_vertices(shared), inst.terminal_sets) if shared else inst


# -- P6-free, k fixed ----------------------------------------------------------------

@normalized
def kp6_base(inst: Instance, meter: Meter) -> Solution | None:
    """P6-free algorithm for fixed k.

    A part is easy when it has a connected dominating set that is an induced
    P4 or has at most two vertices; such parts are guessed directly.  Every
    other part is dominated by a set whose own connected dominating set
    ``Y_i`` has one or two vertices and misses some terminal's private
    neighbour ``x_i``; after guessing ``Y_i`` and ``(x_i, z_i)`` and pruning,
    ``N[Y_i] + Z_i`` is a solution exactly when each ``N[Y_i]`` dominates
    ``Z_i``.
    """
    inst = _drop_shared(inst)
    k = inst.k
    easy_cands = {i: part_candidates(inst, i, meter, max_extra=4) for i in range(k)}
    for size in range(k, -1, -1):
        for easy in combinations(range(k), size):
            hard = [i for i in range(k) if i not in easy]
            for chosen in compatible_choices(inst, easy, easy_cands, meter):
                sol = finish_with(inst, chosen, meter, _difficult)
                if sol is not None:
                    for i, d in chosen.items():
                        meter.record("x", i, d - inst.terminal_sets[i])
                    return sol
    return None


def _closed(view, m: int) -> int:
    return view.closed_nbhd(m)


def _dominates(view, alive: int, y: int, z: int) -> bool:
    """Does ``N[y]`` (inside ``alive``) dominate ``z``?"""
    ny = _closed_within(view, y, alive)
    return _closed_within(view, ny, alive) & z == z


def _closed_within(view, m: int, alive: int) -> int:
    return (view.closed_nbhd(m) & alive) | m


def _difficult(inst: Instance, meter: Meter) -> Solution | None:
    """Every remaining part is difficult (k >= 2, terminals independent, no
    vertex sees two terminal sets)."""
    g = inst.graph
    view = g.view
    adj = view.adj
    k = inst.k
    zs = [view.mask(z) for z in inst.terminal_sets]
    all_z = 0
    for m in zs:
        all_z |= m

    def nb(m: int) -> int:
        return view.open_nbhd(m)

    # candidate Y_i: connected, one or two vertices, no foreign terminal, not
    # adjacent to a foreign terminal set
    ys = []
    for i in range(k):
        foreign = all_z & ~zs[i]
        bad = view.closed_nbhd(foreign)
        opts = []
        for v in g.vertices:
            b = 1 << view.pos[v]
            if b & bad:
                continue
            opts.append(b)
        pairs = []
        for a in opts:
            for b in opts:
                if a < b and adj[a.bit_length() - 1] & b:
                    pairs.append(a | b)
        ys.append(opts + pairs)

    y_pick = [0] * k

    def choose_y(i: int, blocked: int):
        if i == k:
            yield list(y_pick)
            return
        for y in ys[i]:
            meter.tick()
            if y & blocked:
                continue
            y_pick[i] = y
            yield from choose_y(i + 1, blocked | view.closed_nbhd(y))

    for y in choose_y(0, 0):
        # deletion (ii): neighbours of Y_i that see Z_j or Y_j for j != i
        alive = view.full
        for i in range(k):
            ny = nb(y[i])
            for j in range(k):
                if j != i:
                    alive &= ~(ny & view.closed_nbhd(zs[j] | y[j]) & ~(zs[j] | y[j]))
        if not all(_dominates(view, alive, y[i], zs[i]) for i in range(k)):
            continue
        sol = _pairs(inst, meter, y, zs, alive)
        if sol is not None:
            return sol
    return None


def _pairs(inst: Instance, meter: Meter, y: list[int], zs: list[int], alive: int) -> Solution | None:
    view = inst.graph.view
    adj = view.adj
    k = inst.k
    options = []
    for i in range(k):
        ny = view.open_nbhd(y[i]) & alive
        opts = []
        xs = ny & ~zs[i]
        while xs:
            xb = xs & -xs
            xs ^= xb
            cand_z = adj[xb.bit_length() - 1] & zs[i] & ~view.closed_nbhd(y[i])
            while cand_z:
                zb = cand_z & -cand_z
                cand_z ^= zb
                opts.append((xb, zb))
        if not opts:
            return None
        options.append(opts)

    picked: list[tuple[int, int]] = [(0, 0)] * k

    def deletions(upto: int) -> int:
        """Vertices removed by rules (iii) and (iv) for the pairs chosen so far."""
        gone = 0
        for i in range(upto):
            xb, zb = picked[i]
            gone |= adj[zb.bit_length() - 1] & ~xb
            nx = adj[xb.bit_length() - 1]
            for j in range(k):
                if j == i:
                    continue
                other = zs[j] | y[j] | (picked[j][0] if j < upto else 0)
                gone |= nx & view.closed_nbhd(other) & ~other
        return gone

    def rec(i: int, blocked: int) -> Solution | None:
        if i > 0:
            cur = alive & ~deletions(i)
            if not all(_dominates(view, cur, y[j], zs[j]) for j in range(k)):
                return None
        if i == k:
            cur = alive & ~deletions(k)
            parts = []
            for j in range(k):
                parts.append(view.members(_closed_within(view, y[j], cur) | zs[j]))
                meter.record("y", j, view.members(y[j]))
                meter.record("pairs", j, (view.ids[picked[j][0].bit_length() - 1],
                                          view.ids[picked[j][1].bit_length() - 1]))
            return Solution(parts)
        for xb, zb in options[i]:
            meter.tick()
            triple = y[i] | xb | zb
            if triple & blocked:
                continue
            picked[i] = (xb, zb)
            sol = rec(i + 1, blocked | view.closed_nbhd(triple))
            if sol is not None:
                return sol
        return None

    return rec(0, 0)


def _kp6(inst: Instance, meter: Meter, s: int) -> Solution | None:
    return nearly(inst, meter, s, kp6_base, 6)


BASES["kp6"] = kp6_base


def solve_kp6(inst: Instance, s: int, budget: Budget | None = None) -> SolveAnswer:
    """Fixed-k algorithm for (sP1+P6)-free graphs."""
    if s < 0:
        raise InvalidArgument("s must be non-negative")
    require_free(inst.graph, sp1_p6(s))
    return run(inst, "kp6", lambda i, m: _kp6(i, m, s), budget)


# -- (sP1+2P4)-free, k fixed -------------------------------------------------------------

@normalized
def _2p4(inst: Instance, meter: Meter, s: int) -> Solution | None:
    small = [i for i, z in enumerate(inst.terminal_sets) if len(z) <= s - 1]
    caps = {i: (2 * s + 15) * len(inst.terminal_sets[i]) for i in small}
    cands = {i: part_candidates(inst, i, meter, max_size=caps[i]) for i in small}
    for chosen in compatible_choices(inst, small, cands, meter):
        sol = finish_with(inst, chosen, meter, lambda sub, m: _2p4_large(sub, m, s))
        if sol is not None:
            return sol
    return None


def _2p4_large(inst: Instance, meter: Meter, s: int) -> Solution | None:
    """All sets have at least s terminals, so all but at most two parts are
    P4-free and have a connected dominating set of at most two vertices."""
    k = inst.k
    easy_cands = {i: part_candidates(inst, i, meter, max_extra=2) for i in range(k)}
    for size in (k - 1, k - 2):
        for easy in combinations(range(k), size):
            for chosen in compatible_choices(inst, easy, easy_cands, meter):
                sol = finish_with(inst, chosen, meter, lambda sub, m: _two_difficult(sub, m, s))
                if sol is not None:
                    return sol
    return None


def _two_difficult(inst: Instance, meter: Meter, s: int) -> Solution | None:
    """Two sets left: guess the part of the second with at most
    ``(2s+3)(s+1)`` non-terminals, then the first must lie in one component
    of what remains.  An (sP1+P4)-free graph is P(2s+4)-free, which bounds
    each of the s+1 shortest paths the part is rebuilt from."""
    assert inst.k == 2
    t = (2 * s + 3) * (s + 1)
    for f in part_candidates(inst, 1, meter, max_extra=t):
        meter.tick()
        sol = finish_with(inst, {1: f}, meter, None)
        if sol is not None:
            return sol
    return None


def solve_2p4_kfixed(inst: Instance, s: int, k: int, budget: Budget | None = None) -> SolveAnswer:
    """Fixed-k algorithm for (sP1+2P4)-free graphs."""
    if s < 0:
        raise InvalidArgument("s must be non-negative")
    if k < 1 or inst.k != k:
        raise InvalidArgument(f"instance has {inst.k} terminal sets, expected k = {k}")
    require_free(inst.graph, sp1_2p4(s))
    return run(inst, "2p4-kfixed", lambda i, m: _2p4(i, m, s), budget)


# -- (sP1+P3+P4)-free -------------------------------------------------------------------

@normalized
def _p3p4(inst: Instance, meter: Meter, s: int) -> Solution | None:
    order = descending(inst)
    last, first = order[-1], order[0]
    if len(inst.terminal_sets[last]) <= s - 1:
        cap = (2 * s + 13) * len(inst.terminal_sets[last])
        for d in part_candidates(inst, last, meter, max_size=cap):
            sol = finish_with(inst, {last: d}, meter, lambda sub, m: _p5(sub, m, s))
            if sol is not None:
                return sol
        return None
    if inst.k == 2:
        return _2p4(inst, meter, s)
    for d in part_candidates(inst, first, meter, max_extra=2):
        sol = finish_with(inst, {first: d}, meter, lambda sub, m: _p5(sub, m, s))
        if sol is not None:
            return sol
    return None


def solve_p3p4(inst: Instance, s: int, budget: Budget | None = None) -> SolveAnswer:
    """Algorithm for (sP1+P3+P4)-free graphs with k and ell part of the input."""
    if s < 0:
        raise InvalidArgument("s must be non-negative")
    require_free(inst.graph, sp1_p3_p4(s))
    return run(inst, "p3p4", lambda i, m: _p3p4(i, m, s), budget)
