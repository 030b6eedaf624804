"""Exact maximum independent set by branch and bound.

This is a general exponential-time solver.  It stands in for the
class-specific polynomial and quasipolynomial algorithms, so no running-time
guarantee on P6-free or Pr-free inputs is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimit
from .graph import Graph, is_independent_set, popcount

DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class MisResult:
    size: int
    witness: frozenset[int]


def _clique_cover(adj: list[int], cand: int) -> int:
    """Number of cliques in a greedy clique cover of ``cand``."""
    cliques: list[tuple[int, int]] = []  # (members, common neighbourhood)
    while cand:
        b = cand & -cand
        cand ^= b
        i = b.bit_length() - 1
        for j, (members, common) in enumerate(cliques):
            if b & common:
                cliques[j] = (members | b, common & adj[i])
                break
        else:
            cliques.append((b, adj[i]))
    return len(cliques)


def _search(g: Graph, target: int | None, budget: int) -> int:
    view = g.view
    adj = view.adj
    best = [0, 0]  # size, mask
    nodes = [0]

    def rec(cand: int, size: int, chosen: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise ResourceLimit(f"independent set search exceeded {budget} nodes")
        # vertices of degree <= 1 inside cand belong to some maximum solution
        while True:
            forced = 0
            rest = cand
            while rest:
                b = rest & -rest
                rest ^= b
                if popcount(adj[b.bit_length() - 1] & cand) <= 1 and not forced & view.closed_nbhd(b):
                    forced |= b
            if not forced:
                break
            chosen |= forced
            size += popcount(forced)
            cand &= ~view.closed_nbhd(forced)
        if size > best[0]:
            best[0], best[1] = size, chosen
            if target is not None and size >= target:
                return True
        if not cand:
            return False
        bound = size + _clique_cover(adj, cand)
        if bound <= best[0] or (target is not None and bound < target):
            return False
        pick, pick_deg = 0, -1
        rest = cand
        while rest:
            b = rest & -rest
            rest ^= b
            d = popcount(adj[b.bit_length() - 1] & cand)
            if d > pick_deg:
                pick, pick_deg = b, d
        i = pick.bit_length() - 1
        if rec(cand & ~pick & ~adj[i], size + 1, chosen | pick):
            return True
        return rec(cand & ~pick, size, chosen)

    rec(view.full, 0, 0)
    return best[1]


def _checked(g: Graph, mask: int) -> frozenset[int]:
    witness = g.view.members(mask)
    if not is_independent_set(g, witness):
        raise AssertionError("independent set witness failed validation")
    return witness


def max_independent_set(g: Graph, budget: int = DEFAULT_NODE_BUDGET) -> MisResult:
    """A maximum independent set of ``g``.  Raises ResourceLimit once more
    than ``budget`` search nodes are expanded."""
    witness = _checked(g, _search(g, None, budget))
    return MisResult(len(witness), witness)


def has_independent_set(g: Graph, target: int, budget: int = DEFAULT_NODE_BUDGET) -> frozenset[int] | None:
    """An independent set of size at least ``target``, or None."""
    if target <= 0:
        return frozenset()
    witness = _checked(g, _search(g, target, budget))
    return witness if len(witness) >= target else None
