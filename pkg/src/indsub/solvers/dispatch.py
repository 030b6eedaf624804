"""Route an instance to the algorithm matching its forbidden pattern."""

from __future__ import annotations

from dataclasses import replace

from ..errors import InvalidArgument
from ..instance import Instance
from ..patterns import (Complexity, EllFixed, GENERAL, General, KFixed, Pattern, classify, path_bound,
                        smallest_member, sp1_2p4, sp1_p3_p4, sp1_p5, sp1_p6, sp3_p6)
from .blobsolvers import solve_p5, solve_pr_generic, solve_sp3p6
from .common import Budget, SolveAnswer, require_free
from .dominators import solve_2p4_kfixed, solve_kp6, solve_p3p4
from .oracle import oracle_idcs


def plan(h: Pattern, mode=GENERAL) -> tuple[str, dict]:
    """Name and parameters of the solver used for ``h`` under ``mode``."""
    verdict = classify(h, mode)
    if verdict.status is Complexity.POLYNOMIAL:
        if isinstance(mode, EllFixed):
            return "sp3p6", {"s": smallest_member(h, sp3_p6), "ell": mode.ell}
        if isinstance(mode, General):
            s = smallest_member(h, sp1_p5)
            if s is not None:
                return "p5", {"s": s}
            return "p3p4", {"s": smallest_member(h, sp1_p3_p4)}
        if isinstance(mode, KFixed):
            s = smallest_member(h, sp1_p6)
            if s is not None:
                return "kp6", {"s": s}
            return "2p4-kfixed", {"s": smallest_member(h, sp1_2p4), "k": mode.k}
    if verdict.status is Complexity.QUASIPOLYNOMIAL:
        return "pr-generic", {"r": path_bound(h), "ell": mode.ell}
    return "oracle", {}


def dispatch(inst: Instance, h: Pattern, mode=GENERAL, budget: Budget | None = None) -> SolveAnswer:
    """Solve an H-free instance with the algorithm the classification picks;
    hard or open cases fall back to the exact oracle under ``budget``."""
    require_free(inst.graph, h)
    if isinstance(mode, EllFixed) and inst.ell > mode.ell:
        raise InvalidArgument(f"instance has a terminal set of size {inst.ell} > ell = {mode.ell}")
    if isinstance(mode, KFixed) and inst.k != mode.k:
        raise InvalidArgument(f"instance has {inst.k} terminal sets, expected k = {mode.k}")
    name, params = plan(h, mode)
    if name == "sp3p6":
        ans = solve_sp3p6(inst, params["s"], params["ell"], budget)
    elif name == "pr-generic":
        ans = solve_pr_generic(inst, params["r"], params["ell"], budget)
    elif name == "p5":
        ans = solve_p5(inst, params["s"], budget)
    elif name == "p3p4":
        ans = solve_p3p4(inst, params["s"], budget)
    elif name == "kp6":
        ans = solve_kp6(inst, params["s"], budget)
    elif name == "2p4-kfixed":
        ans = solve_2p4_kfixed(inst, params["s"], params["k"], budget)
    else:
        pattern = h if h.linear_forest is not None else None
        ans = oracle_idcs(inst, budget, pattern)
    detail = ",".join(f"{k}={v}" for k, v in sorted(params.items()))
    return replace(ans, route=f"{name}({detail})" if detail else name)
