"""Lifting a Pr-free algorithm (r <= 6) to (sP1+Pr)-free graphs."""

from __future__ import annotations

from itertools import combinations

from ..errors import InvalidArgument, ResourceLimit
from ..graph import component_containing
from ..instance import Instance, Solution
from ..patterns import is_h_free, linear_forest
from .common import (Budget, Meter, SolveAnswer, Status, compatible_choices, descending, finish_with,
                     normalized, part_candidates, require_free, run)


def nearly(inst: Instance, meter: Meter, s: int, base, r: int) -> Solution | None:
    """Solve an (sP1+Pr)-free instance with ``base``, a Pr-free solver
    ``base(instance, meter) -> Solution | None``.  For ``s = 0`` this is
    ``base`` itself."""
    if r > 6:
        raise InvalidArgument("lifting needs r <= 6")
    if s == 0:
        return base(inst, meter)
    return _lift(inst, meter, s, base, r)


@normalized
def _lift(inst: Instance, meter: Meter, s: int, base, r: int) -> Solution | None:
    order = descending(inst)
    sizes = [len(inst.terminal_sets[i]) for i in order]
    k = inst.k
    if sizes[1] <= s - 1:
        return _small_sets(inst, meter, s, base, order)
    sol = _few_dominators(inst, meter, s, base, order)
    if sol is not None:
        return sol
    return _swap_private(inst, meter, s, base, r)


def _small_sets(inst, meter, s, base, order):
    """Every set but the largest has at most s-1 terminals: guess those parts
    (up to s of them); what is left is Pr-free."""
    k = inst.k
    rest = order[1:]
    caps = {i: (2 * s + 11) * len(inst.terminal_sets[i]) for i in rest}
    if k <= s:
        guessed = rest
    else:
        guessed = rest[:s]
    cands = {i: part_candidates(inst, i, meter, max_size=caps[i]) for i in guessed}
    for chosen in compatible_choices(inst, guessed, cands, meter):
        sol = finish_with(inst, chosen, meter, base)
        if sol is not None:
            return sol
    return None


def _few_dominators(inst, meter, s, base, order):
    """Parts of the s largest sets each have a connected dominating set of
    at most 7s+1 vertices: guess them, solve the Pr-free rest."""
    guessed = order[:min(s, inst.k)]
    cands = {i: part_candidates(inst, i, meter, max_extra=7 * s + 1) for i in guessed}
    for chosen in compatible_choices(inst, guessed, cands, meter):
        sol = finish_with(inst, chosen, meter, base)
        if sol is not None:
            for i, d in chosen.items():
                meter.record("x", i, d - inst.terminal_sets[i])
            return sol
    return None


def _swap_private(inst, meter, s, base, r):
    """Some part has a large minimal dominator.  Guess s of its terminals Q
    and one private neighbour for each (the set R); if removing
    ``N[Q] - R`` leaves a Pr-free graph, replace Q by R in the terminal set."""
    g = inst.graph
    pr = linear_forest(r)
    for i, z in enumerate(inst.terminal_sets):
        if len(z) < s:
            continue
        for q in combinations(sorted(z), s):
            qset = frozenset(q)
            nq = set()
            for v in q:
                nq |= g.neighbors(v)
            for rset in combinations(sorted(nq), s):
                meter.tick()
                rfs = frozenset(rset)
                if any(len(g.neighbors(v) & rfs) != 1 for v in q):
                    continue
                gone = (nq | qset) - rfs
                sub_g = g.remove_vertices(gone)
                if not is_h_free(sub_g, pr):
                    continue
                sets = list(inst.terminal_sets)
                sets[i] = (z - qset) | rfs
                sol = base(Instance(sub_g, sets), meter)
                if sol is None:
                    continue
                parts = list(sol.subgraphs)
                parts[i] = parts[i] | qset
                meter.record("q", i, qset)
                meter.record("r", i, rfs)
                return Solution(parts)
    return None


BASES = {}


def _resolve_base(base, meter_budget):
    if isinstance(base, str):
        if base not in BASES:
            raise InvalidArgument(f"unknown base solver {base!r}; choose from {sorted(BASES)}")
        return BASES[base]

    def call(inst: Instance, meter: Meter):
        ans = base(inst, meter_budget)
        if ans.status is Status.GAVE_UP:
            raise ResourceLimit(ans.reason)
        return ans.solution

    return call


def solve_nearly(inst: Instance, s: int, base, r: int, budget: Budget | None = None) -> SolveAnswer:
    """Solve an (sP1+Pr)-free instance given a Pr-free solver.

    ``base`` is ``"p5"``, ``"kp6"`` or a callable ``(Instance, Budget) ->
    SolveAnswer``.
    """
    if r > 6:
        raise InvalidArgument("lifting needs r <= 6")
    if s < 0:
        raise InvalidArgument("s must be non-negative")
    require_free(inst.graph, linear_forest(*([1] * s), r))
    fn = _resolve_base(base, budget)
    return run(inst, f"nearly(s={s},r={r})", lambda i, m: nearly(i, m, s, fn, r), budget)
