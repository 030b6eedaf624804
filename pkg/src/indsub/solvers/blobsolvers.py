"""Solvers that reduce to independent sets in a bounded blob graph."""

from __future__ import annotations

from ..blob import BlobGraph, p5_blob, terminal_blob
from ..errors import InvalidArgument
from ..graph import Graph
from ..instance import Instance, No, Solution, Solved, normalize
from ..mis import has_independent_set
from ..patterns import linear_forest, sp1_p5, sp3_p6
from .common import (Budget, Meter, SolveAnswer, compatible_choices, finish_with, normalized,
                     part_candidates, part_room, require_free, run)


def _mis_budget(meter: Meter) -> int:
    return max(meter.budget.max_branches - meter.count, 1)


def _solution_from_blob(inst: Instance, blob: BlobGraph, meter: Meter) -> Solution | None:
    witness = has_independent_set(blob.as_graph(), inst.k, _mis_budget(meter))
    meter.tick(len(blob))
    if witness is None:
        return None
    parts = {}
    for node in sorted(witness):
        parts[blob.nodes[node].terminal_index] = blob.nodes[node].set
    return Solution(parts[i] for i in range(inst.k))


def _blob_step(inst: Instance, meter: Meter, max_size: int) -> Solution | None:
    """Independent set of size k among connected sets of at most ``max_size``
    vertices that each hold one whole terminal set."""
    room = set()
    for i in range(inst.k):
        room |= part_room(inst, i)
    blob = terminal_blob(inst, meter.cap(max_size), minimal=True, allowed=room, tick=meter.tick)
    return _solution_from_blob(inst, blob, meter)


def _exhaustive(inst: Instance, meter: Meter, caps: list[int]) -> Solution | None:
    cands = {i: part_candidates(inst, i, meter, max_size=caps[i]) for i in range(inst.k)}
    for chosen in compatible_choices(inst, range(inst.k), cands, meter):
        return Solution(chosen[i] for i in range(inst.k))
    return None


@normalized
def _sp3p6(inst: Instance, meter: Meter, s: int, ell: int) -> Solution | None:
    caps = [(6 * s + 11) * len(z) for z in inst.terminal_sets]
    if inst.k <= s:
        return _exhaustive(inst, meter, caps)
    first = list(range(s))
    cands = {i: part_candidates(inst, i, meter, max_size=caps[i]) for i in first}
    for chosen in compatible_choices(inst, first, cands, meter):
        sol = finish_with(inst, chosen, meter, lambda sub, m: _blob_step(sub, m, 11 * ell))
        if sol is not None:
            return sol
    return None


@normalized
def _pr_generic(inst: Instance, meter: Meter, r: int, ell: int) -> Solution | None:
    return _blob_step(inst, meter, (2 * r - 1) * ell)


def _check_ell(inst: Instance, ell: int) -> None:
    if ell < 1:
        raise InvalidArgument("ell must be positive")
    if inst.ell > ell:
        raise InvalidArgument(f"instance has a terminal set of size {inst.ell} > ell = {ell}")


def solve_sp3p6(inst: Instance, s: int, ell: int, budget: Budget | None = None) -> SolveAnswer:
    """Fixed-ell algorithm for (sP3+P6)-free graphs: guess the first s parts,
    then find an independent set in the bounded terminal blob graph of the
    P6-free remainder."""
    if s < 0:
        raise InvalidArgument("s must be non-negative")
    _check_ell(inst, ell)
    require_free(inst.graph, sp3_p6(s))
    return run(inst, "sp3p6", lambda i, m: _sp3p6(i, m, s, ell), budget)


def solve_pr_generic(inst: Instance, r: int, ell: int, budget: Budget | None = None) -> SolveAnswer:
    """Fixed-ell algorithm for Pr-free graphs through the terminal blob graph
    with parts of at most ``(2r-1) ell`` vertices."""
    if r < 1:
        raise InvalidArgument("r must be positive")
    _check_ell(inst, ell)
    require_free(inst.graph, linear_forest(r))
    return run(inst, "pr-generic", lambda i, m: _pr_generic(i, m, r, ell), budget)


# -- P5-free graphs ------------------------------------------------------------------

def _touching(g: Graph, inst: Instance, v: int) -> dict[int, int]:
    """Number of neighbours of ``v`` in each terminal set it sees."""
    out: dict[int, int] = {}
    nb = g.neighbors(v)
    for i, z in enumerate(inst.terminal_sets):
        c = len(nb & z)
        if c:
            out[i] = c
    return out


def p5_base(inst: Instance, meter: Meter) -> Solution | None:
    """P5-free algorithm.  Repeatedly: normalize, drop vertices seeing two
    terminal sets, and absorb any vertex seeing part but not all of a
    terminal set into that set.  Then only vertices complete to exactly one
    set matter, and the sets ``Z_i + {v}`` form a blob graph whose
    independent sets of size k are the solutions."""
    lifts = []
    cur = inst
    while True:
        meter.tick()
        out = normalize(cur)
        if isinstance(out, No):
            return None
        if isinstance(out, Solved):
            sol = out.solution
            break
        lifts.append(out.lift)
        cur = out.instance
        g = cur.graph
        terminals = cur.terminals
        seen = {v: _touching(g, cur, v) for v in g.vertices if v not in terminals}
        shared = [v for v, t in seen.items() if len(t) >= 2]
        if shared:
            cur = Instance(g.remove_vertices(shared), cur.terminal_sets)
            continue
        partial = next(((v, i) for v, t in seen.items() for i, c in t.items()
                        if c < len(cur.terminal_sets[i])), None)
        if partial is not None:
            v, i = partial
            sets = list(cur.terminal_sets)
            sets[i] = sets[i] | {v}
            cur = Instance(g, sets)
            continue
        complete = [v for v, t in seen.items() if len(t) == 1]
        sol = _solution_from_blob(cur, p5_blob(cur, complete), meter)
        if sol is None:
            return None
        break
    for lift in reversed(lifts):
        sol = lift(sol)
    return sol


def _p5(inst: Instance, meter: Meter, s: int) -> Solution | None:
    from .nearly import nearly
    return nearly(inst, meter, s, p5_base, 5)


def solve_p5(inst: Instance, s: int, budget: Budget | None = None) -> SolveAnswer:
    """Algorithm for (sP1+P5)-free graphs with k and ell part of the input."""
    if s < 0:
        raise InvalidArgument("s must be non-negative")
    require_free(inst.graph, sp1_p5(s))
    return run(inst, "p5", lambda i, m: _p5(i, m, s), budget)
