"""Exact oracles, the class-specific algorithms, and the dispatcher."""

from .blobsolvers import p5_base, solve_p5, solve_pr_generic, solve_sp3p6
from .common import Budget, DominatorGuess, SolveAnswer, Status
from .dispatch import dispatch, plan
from .dominators import kp6_base, solve_2p4_kfixed, solve_kp6, solve_p3p4
from .nearly import BASES, solve_nearly
from .oracle import oracle_disjoint_cs, oracle_flexible_idp, oracle_idcs

BASES["p5"] = p5_base

__all__ = [
    "Budget", "DominatorGuess", "SolveAnswer", "Status",
    "dispatch", "plan",
    "oracle_idcs", "oracle_disjoint_cs", "oracle_flexible_idp",
    "solve_sp3p6", "solve_pr_generic", "solve_p5", "solve_kp6", "solve_2p4_kfixed",
    "solve_p3p4", "solve_nearly",
]
