"""Seeded random graphs, H-free graphs, instances and CNF formulas."""

from __future__ import annotations

import itertools
import random

from .graph import Graph
from .instance import Instance
from .patterns import Pattern, contains_induced_through_edge


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def _add_edge(g: Graph, u: int, v: int) -> Graph:
    adj = {x: g.neighbors(x) for x in g.vertices}
    adj[u] = adj[u] | {v}
    adj[v] = adj[v] | {u}
    return Graph._from_adj(adj)


def random_h_free_graph(n: int, h: Pattern, rng: random.Random, p: float = 0.4) -> Graph:
    """Random H-free graph on ``0..n-1``.

    Candidate edges are visited in random order and each is kept with
    probability ``p`` unless it creates an induced H.  Any new induced copy
    must use the added edge, so one anchored search per edge suffices.
    """
    g = Graph.from_edges(n, [])
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() >= p:
            continue
        trial = _add_edge(g, u, v)
        if contains_induced_through_edge(trial, h, u, v) is None:
            g = trial
    return g


def random_connected_h_free_graph(n: int, h: Pattern, rng: random.Random, p: float = 0.4,
                                  attempts: int = 200) -> Graph | None:
    """Like ``random_h_free_graph`` but starts from a random spanning tree
    that is itself H-free; None when no attempt succeeds."""
    from .patterns import is_h_free
    for _ in range(attempts):
        order = list(range(n))
        rng.shuffle(order)
        tree = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
        g = Graph.from_edges(n, tree)
        if not is_h_free(g, h):
            continue
        pairs = [e for e in itertools.combinations(range(n), 2) if not g.has_edge(*e)]
        rng.shuffle(pairs)
        for u, v in pairs:
            if rng.random() >= p:
                continue
            trial = _add_edge(g, u, v)
            if contains_induced_through_edge(trial, h, u, v) is None:
                g = trial
        return g
    return None


def _independent_pick(g: Graph, rng: random.Random, pool, size: int, avoid=frozenset()) -> list[int] | None:
    pool = [v for v in pool if v not in avoid]
    rng.shuffle(pool)
    picked: list[int] = []
    banned = set(avoid)
    for v in pool:
        if v not in banned:
            picked.append(v)
            banned |= g.neighbors(v) | {v}
            if len(picked) == size:
                return picked
    return None


def random_instance(g: Graph, rng: random.Random, k: int, ell: int, min_size: int = 1,
                    independent: bool = False) -> Instance | None:
    """``k`` disjoint random terminal sets with sizes in ``[min_size, ell]``.

    With ``independent`` the union of all terminals is an independent set,
    so the instance survives normalization untouched.  None when the graph
    cannot host the sets.
    """
    sizes = [rng.randint(min_size, ell) for _ in range(k)]
    if independent:
        flat = _independent_pick(g, rng, list(g.vertices), sum(sizes))
        if flat is None:
            return None
        pool = flat
    else:
        if sum(sizes) > len(g):
            return None
        pool = list(g.vertices)
        rng.shuffle(pool)
    sets = []
    at = 0
    for sz in sizes:
        sets.append(pool[at:at + sz])
        at += sz
    return Instance(g, sets)


def random_cnf(rng: random.Random, max_vars: int = 5, max_clauses: int = 4, max_width: int = 3,
               monotone: bool = False, positive_only: bool = False, min_width: int = 1):
    """Random CNF without repeated variables inside a clause."""
    from .reductions import CnfFormula
    n = rng.randint(min_width, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        width = rng.randint(min_width, min(max_width, n))
        vars_ = rng.sample(range(1, n + 1), width)
        if positive_only:
            sign = [1] * width
        elif monotone:
            sign = [rng.choice((1, -1))] * width
        else:
            sign = [rng.choice((1, -1)) for _ in range(width)]
        clauses.append([s * v for s, v in zip(sign, vars_)])
    return CnfFormula(n, clauses)


def planted_instance(g: Graph, rng: random.Random, k: int, ell: int, min_size: int = 2) -> Instance | None:
    """Terminal sets drawn as independent subsets of ``k`` randomly grown,
    mutually induced connected sets, so the instance is a yes-instance that
    survives normalization; None if the growth fails."""
    view = g.view
    blocked = 0
    parts = []
    for _ in range(k):
        near = view.closed_nbhd(blocked)
        free = [v for v in g.vertices if not near >> view.pos[v] & 1]
        if not free:
            return None
        root = rng.choice(free)
        part = 1 << view.pos[root]
        target = rng.randint(2 * min_size - 1, 2 * min_size + 5)
        while bin(part).count("1") < target:
            frontier = view.open_nbhd(part) & ~view.closed_nbhd(blocked)
            if not frontier:
                break
            part |= 1 << view.pos[rng.choice(sorted(view.members(frontier)))]
        parts.append(sorted(view.members(part)))
        blocked |= part
    sets = []
    for members in parts:
        z = _independent_pick(g, rng, members, rng.randint(min_size, ell))
        if z is None:
            z = _independent_pick(g, rng, members, min_size)
        if z is None:
            return None
        sets.append(z)
    return Instance(g, sets)


def separately_connectable(inst: Instance) -> bool:
    """Each terminal set can be connected on its own while avoiding the
    other sets and their neighbours.  Instances failing this are trivially no."""
    g = inst.graph
    view = g.view
    masks = [view.mask(z) for z in inst.terminal_sets]
    for i, m in enumerate(masks):
        others = 0
        for j, o in enumerate(masks):
            if j != i:
                others |= o
        room = view.full & ~view.closed_nbhd(others)
        if m & ~room or view.reach(m & -m, room) & m != m:
            return False
    return True


def perturbed_instance(g: Graph, rng: random.Random, k: int, ell: int) -> Instance | None:
    """A planted instance with one terminal moved to a random vertex that
    keeps all terminals independent.  Often a no-instance, never a trivial
    one: it is rejected unless it is separately connectable."""
    inst = planted_instance(g, rng, k, ell)
    if inst is None:
        return None
    sets = [list(z) for z in inst.terminal_sets]
    i = rng.randrange(k)
    sets[i].pop(rng.randrange(len(sets[i])))
    rest = set().union(*sets)
    near = set(rest)
    for v in rest:
        near |= g.neighbors(v)
    free = [v for v in g.vertices if v not in near]
    if not free:
        return None
    # prefer vertices crowding another set, which tends to break the answer
    others = set().union(*(sets[j] for j in range(k) if j != i))
    ring = set()
    for v in others:
        ring |= g.neighbors(v)
    crowded = [v for v in free if g.neighbors(v) & ring]
    sets[i].append(rng.choice(crowded or free))
    moved = Instance(g, sets)
    return moved if separately_connectable(moved) else None


def mixed_instance(g: Graph, rng: random.Random, k: int, ell: int, planted: bool | None = None) -> Instance | None:
    """A planted yes-instance, or independent terminal sets that are each
    connectable on their own (a coin flip when ``planted`` is None).  The
    latter are drawn at random first and by perturbing a planted instance
    when that keeps failing.  Every set has at least two terminals.  None
    when ``g`` cannot host the requested kind."""
    if planted is None:
        planted = rng.random() < 0.5
    for attempt in range(20):
        if planted:
            inst = planted_instance(g, rng, k, ell)
        elif attempt < 15:
            inst = random_instance(g, rng, k, ell, min_size=2, independent=True)
            if inst is not None and not separately_connectable(inst):
                inst = None
        else:
            inst = perturbed_instance(g, rng, k, ell)
        if inst is not None:
            return inst
    return None
