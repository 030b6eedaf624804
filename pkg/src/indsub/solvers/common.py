"""Answer types, search budgets and the part-guessing helpers shared by the solvers."""

from __future__ import annotations

import enum
import os
import time
from dataclasses import dataclass, field

from ..errors import InvalidArgument, ResourceLimit
from ..graph import Graph, component_containing, connected_supersets
from ..instance import Instance, No, Reduced, Solution, Solved, normalize, verify_solution
from ..patterns import Pattern, is_h_free


class Status(enum.Enum):
    YES = "yes"
    NO = "no"
    GAVE_UP = "gave_up"


@dataclass(frozen=True)
class DominatorGuess:
    """Guessed structures behind a Yes answer, in the ids of the working
    graph where each guess was made.

    ``x``: small connected dominators fixed for whole parts; ``y``: the one- or
    two-vertex dominators of difficult parts; ``pairs``: ``(x_i, z_i)`` with
    ``z_i`` a private terminal neighbour of ``x_i``; ``r``/``q``: the swapped
    sets of a terminal-set replacement.
    """

    x: dict[int, frozenset[int]] = field(default_factory=dict)
    y: dict[int, frozenset[int]] = field(default_factory=dict)
    pairs: dict[int, tuple[int, int]] = field(default_factory=dict)
    r: dict[int, frozenset[int]] = field(default_factory=dict)
    q: dict[int, frozenset[int]] = field(default_factory=dict)


@dataclass(frozen=True)
class SolveAnswer:
    status: Status
    solution: Solution | None = None
    reason: str = ""
    route: str = ""
    guess: DominatorGuess | None = None
    branches: int = 0

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.NO

    @property
    def gave_up(self) -> bool:
        return self.status is Status.GAVE_UP


def _default_time_limit() -> float:
    ms = os.environ.get("INDSUB_BUDGET_MS")
    if ms:
        try:
            return max(int(ms), 1) / 1000.0
        except ValueError:
            raise InvalidArgument(f"INDSUB_BUDGET_MS must be an integer, got {ms!r}") from None
    return 120.0


@dataclass(frozen=True)
class Budget:
    """Search limits.  ``max_subset_size`` caps any single enumerated part,
    ``max_branches`` caps search nodes across the whole call tree and
    ``time_limit`` is wall time in seconds."""

    max_subset_size: int = 64
    max_branches: int = 20_000_000
    time_limit: float = field(default_factory=_default_time_limit)

    def __post_init__(self):
        if self.max_subset_size <= 0 or self.max_branches <= 0 or self.time_limit <= 0:
            raise InvalidArgument("budget fields must be positive")


class Meter:
    """Shared counter for one top-level call; nested solvers draw from it."""

    def __init__(self, budget: Budget | None):
        self.budget = budget or Budget()
        self.count = 0
        self.deadline = time.monotonic() + self.budget.time_limit
        self.guess: dict[str, dict] = {"x": {}, "y": {}, "pairs": {}, "r": {}, "q": {}}

    def tick(self, n: int = 1) -> None:
        self.count += n
        if self.count > self.budget.max_branches:
            raise ResourceLimit(f"branch budget of {self.budget.max_branches} exhausted")
        if self.count & 1023 == 0 and time.monotonic() > self.deadline:
            raise ResourceLimit(f"time budget of {self.budget.time_limit:g}s exhausted")

    def cap(self, size: int) -> int:
        return min(size, self.budget.max_subset_size)

    def record(self, kind: str, index: int, value) -> None:
        self.guess[kind][index] = value

    def dominator_guess(self) -> DominatorGuess | None:
        if not any(self.guess.values()):
            return None
        return DominatorGuess(**{k: dict(v) for k, v in self.guess.items()})


# -- wrappers ------------------------------------------------------------------------

def require_free(g: Graph, h: Pattern) -> None:
    if not is_h_free(g, h):
        raise InvalidArgument(f"graph is not {h}-free")


def run(inst: Instance, route: str, body, budget: Budget | None) -> SolveAnswer:
    """Run ``body(inst, meter) -> Solution | None``, turning budget exhaustion
    into GaveUp and re-checking every witness against ``inst``."""
    meter = Meter(budget)
    try:
        sol = body(inst, meter)
    except ResourceLimit as exc:
        return SolveAnswer(Status.GAVE_UP, reason=str(exc), route=route, branches=meter.count)
    if sol is None:
        return SolveAnswer(Status.NO, route=route, branches=meter.count)
    verdict = verify_solution(inst, sol)
    if not verdict:
        raise AssertionError(f"{route} produced an invalid witness: clause {verdict.clause}, {verdict.detail}")
    return SolveAnswer(Status.YES, sol, route=route, guess=meter.dominator_guess(), branches=meter.count)


def normalized(body):
    """Wrap ``body(reduced_instance, meter, *args)`` with normalization and lifting."""

    def wrapped(inst: Instance, meter: Meter, *args):
        out = normalize(inst)
        if isinstance(out, No):
            return None
        if isinstance(out, Solved):
            return out.solution
        assert isinstance(out, Reduced)
        sol = body(out.instance, meter, *args)
        return None if sol is None else out.lift(sol)

    wrapped.__name__ = body.__name__
    wrapped.__doc__ = body.__doc__
    return wrapped


# -- guessing parts of a solution ------------------------------------------------

def part_room(inst: Instance, i: int) -> frozenset[int]:
    """Vertices usable by part ``i``: everything outside the closed
    neighbourhoods of the other terminal sets."""
    g = inst.graph
    view = g.view
    others = 0
    for j, z in enumerate(inst.terminal_sets):
        if j != i:
            others |= view.mask(z)
    return view.members(view.full & ~view.closed_nbhd(others))


def part_candidates(inst: Instance, i: int, meter: Meter, max_size: int | None = None,
                    max_extra: int | None = None) -> list[frozenset[int]]:
    """Inclusion-minimal connected sets holding ``Z_i`` that avoid the other
    terminal sets and their neighbours.

    Shrinking a part of a solution to a minimal connected superset of its
    terminal set keeps it a solution, so guessing only minimal parts loses
    nothing.
    """
    z = inst.terminal_sets[i]
    room = part_room(inst, i)
    if not z <= room:
        return []
    if max_size is not None:
        max_size = meter.cap(max_size)
    return connected_supersets(inst.graph, z, room, max_size=max_size, max_extra=max_extra,
                               minimal=True, tick=meter.tick)


def compatible_choices(inst: Instance, indices, candidates, meter: Meter):
    """Yield every assignment ``{i: D_i}`` over ``indices`` (in that order)
    whose parts are pairwise disjoint with no edges between them."""
    view = inst.graph.view
    indices = list(indices)
    cand_masks = [[(view.mask(d), d) for d in candidates[i]] for i in indices]
    chosen: dict[int, frozenset[int]] = {}

    def rec(pos: int, blocked: int):
        if pos == len(indices):
            yield dict(chosen)
            return
        for m, d in cand_masks[pos]:
            meter.tick()
            if m & blocked:
                continue
            chosen[indices[pos]] = d
            yield from rec(pos + 1, blocked | view.closed_nbhd(m))
            del chosen[indices[pos]]

    yield from rec(0, 0)


def remainder(inst: Instance, chosen: dict[int, frozenset[int]]) -> tuple[Graph, list[int]]:
    """``G - N[union of chosen parts]`` and the indices of the sets left over."""
    view = inst.graph.view
    used = 0
    for d in chosen.values():
        used |= view.mask(d)
    g = inst.graph.remove_vertices(view.members(view.closed_nbhd(used)))
    rest = [i for i in range(inst.k) if i not in chosen]
    return g, rest


def finish_with(inst: Instance, chosen: dict[int, frozenset[int]], meter: Meter, solve_rest) -> Solution | None:
    """Delete ``N[chosen parts]`` and solve the leftover sets with ``solve_rest``
    (called only when at least two sets remain)."""
    g, rest = remainder(inst, chosen)
    parts = dict(chosen)
    if not rest:
        return Solution(parts[i] for i in range(inst.k))
    if len(rest) == 1:
        comp = component_containing(g, inst.terminal_sets[rest[0]])
        if comp is None:
            return None
        parts[rest[0]] = comp
        return Solution(parts[i] for i in range(inst.k))
    sub = Instance(g, [inst.terminal_sets[i] for i in rest])
    sol = solve_rest(sub, meter)
    if sol is None:
        return None
    for j, d in zip(rest, sol.subgraphs):
        parts[j] = d
    return Solution(parts[i] for i in range(inst.k))


def descending(inst: Instance) -> list[int]:
    """Set indices by decreasing size, ties by index."""
    return sorted(range(inst.k), key=lambda i: (-len(inst.terminal_sets[i]), i))
