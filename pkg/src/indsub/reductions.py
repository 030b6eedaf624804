"""CNF input, brute-force satisfiability, and hardness gadgets that turn
formulas or non-induced instances into induced-subgraph instances."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

from .errors import InvalidArgument, ParseError, ResourceLimit
from .graph import Graph, girth, line_graph, subdivide_edges
from .instance import Instance
from .patterns import is_h_free, parse_pattern

MAX_BRUTE_VARS = 22


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are lists of signed variable indices in ``1..num_vars``."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __init__(self, num_vars: int, clauses):
        if num_vars < 0:
            raise InvalidArgument("num_vars must be non-negative")
        cls = tuple(tuple(c) for c in clauses)
        for j, c in enumerate(cls):
            for lit in c:
                if lit == 0 or abs(lit) > num_vars:
                    raise InvalidArgument(f"clause {j + 1}: literal {lit} out of range 1..{num_vars}")
            if len({abs(lit) for lit in c}) != len(c):
                raise InvalidArgument(f"clause {j + 1} repeats a variable")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "clauses", cls)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_monotone(self) -> bool:
        return all(all(l > 0 for l in c) or all(l < 0 for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, (*c, 0))) for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError("second problem line", f"line {lineno}")
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("problem line must be 'p cnf <vars> <clauses>'", f"line {lineno}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("non-integer counts in problem line", f"line {lineno}") from None
            continue
        if header is None:
            raise ParseError("clause before problem line", f"line {lineno}")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", f"line {lineno}") from None
            if lit == 0:
                if len({abs(x) for x in current}) != len(current):
                    raise ParseError("variable repeated within a clause", f"line {lineno}")
                clauses.append(current)
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared {header[0]} variables", f"line {lineno}")
            current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' problem line")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], clauses)


def read_dimacs(path) -> CnfFormula:
    with open(path) as fh:
        return parse_dimacs(fh.read())


class Semantics(enum.Enum):
    SAT = "sat"
    NAE = "nae"
    MONOTONE_CHECK = "monotone"


def sat_brute(f: CnfFormula, semantics: Semantics = Semantics.SAT) -> bool:
    """Try all assignments."""
    if f.num_vars > MAX_BRUTE_VARS:
        raise ResourceLimit(f"{f.num_vars} variables exceed the brute-force limit of {MAX_BRUTE_VARS}")
    if semantics is Semantics.MONOTONE_CHECK and not f.is_monotone():
        raise InvalidArgument("formula has a clause mixing positive and negative literals")
    nae = semantics is Semantics.NAE
    for bits in itertools.product((False, True), repeat=f.num_vars):
        ok = True
        for c in f.clauses:
            vals = [bits[abs(l) - 1] == (l > 0) for l in c]
            if not any(vals) or (nae and all(vals)):
                ok = False
                break
        if ok:
            return True
    return False


class Variant(enum.Enum):
    IDCS = "IDCS"
    FLEXIBLE_IDP = "FlexibleIDP"


@dataclass(frozen=True)
class GadgetOutput:
    instance: Instance
    variant: Variant
    vertex_roles: dict[int, str] = field(hash=False)
    certified_classes: tuple[str, ...]

    def certify(self) -> list[str]:
        """Re-run the class checks; returns the specs that hold."""
        return [spec for spec in self.certified_classes if is_h_free(self.instance.graph, parse_pattern(spec))]


def _certified(inst: Instance, variant: Variant, roles: dict[int, str], classes) -> GadgetOutput:
    for spec in classes:
        if not is_h_free(inst.graph, parse_pattern(spec)):
            raise AssertionError(f"gadget output is not {spec}-free")
    labelled = Instance(inst.graph.with_labels(roles), inst.terminal_sets)
    return GadgetOutput(labelled, variant, roles, tuple(classes))


# -- formula gadgets -------------------------------------------------------------------

def gen_nae_gadget(f: CnfFormula) -> GadgetOutput:
    """Two-set instance that is a yes-instance iff ``f`` is NAE-satisfiable.

    Clauses list variables only (positive literals) and have two or three
    of them.
    """
    n, m = f.num_vars, f.num_clauses
    if m == 0:
        raise InvalidArgument("the gadget needs at least one clause")
    for j, c in enumerate(f.clauses):
        if len(c) > 3:
            raise InvalidArgument(f"clause {j + 1} has {len(c)} literals; at most 3 allowed")
        if len(c) < 2:
            raise InvalidArgument(f"clause {j + 1} has fewer than two literals")
        if any(l < 0 for l in c):
            raise InvalidArgument(f"clause {j + 1} has a negated literal")
    v = list(range(n))
    vp = list(range(n, 2 * n))
    c = list(range(2 * n, 2 * n + m))
    cp = list(range(2 * n + m, 2 * n + 2 * m))
    edges = list(itertools.combinations(v, 2)) + list(itertools.combinations(vp, 2))
    edges += list(zip(v, vp))
    for j, clause in enumerate(f.clauses):
        for lit in clause:
            edges.append((v[lit - 1], c[j]))
            edges.append((vp[lit - 1], cp[j]))
    roles = {}
    for i in range(n):
        roles[v[i]] = f"X-clique({i + 1})"
        roles[vp[i]] = f"X'-clique({i + 1})"
    for j in range(m):
        roles[c[j]] = f"C({j + 1})"
        roles[cp[j]] = f"C'({j + 1})"
    g = Graph(range(2 * n + 2 * m), edges)
    return _certified(Instance(g, [c, cp]), Variant.IDCS, roles, ("3P2", "P7"))


def gen_monotone_gadget(f: CnfFormula) -> GadgetOutput:
    """Instance that is a yes-instance iff the monotone formula ``f`` is
    satisfiable.  Each negative clause with ``q`` literals becomes a
    ``K_{2,q}`` whose two-vertex side is a terminal set."""
    if not f.is_monotone():
        raise InvalidArgument("formula is not monotone")
    n = f.num_vars
    pos = [c for c in f.clauses if c and c[0] > 0]
    neg = [c for c in f.clauses if c and c[0] < 0]
    if any(not c for c in f.clauses):
        raise InvalidArgument("empty clause")
    roles = {i: f"variable({i + 1})" for i in range(n)}
    edges = list(itertools.combinations(range(n), 2))
    nxt = n
    p_ids = []
    for j, c in enumerate(pos):
        p_ids.append(nxt)
        roles[nxt] = f"p({j + 1})"
        edges += [(nxt, l - 1) for l in c]
        nxt += 1
    x = nxt
    roles[x] = "x"
    edges += [(x, i) for i in range(n)]
    nxt += 1
    sets = [p_ids + [x]]
    for j, c in enumerate(neg):
        lits = []
        for q, l in enumerate(c):
            lits.append(nxt)
            roles[nxt] = f"n({j + 1},{q + 1})"
            edges.append((nxt, -l - 1))
            nxt += 1
        conn = [nxt, nxt + 1]
        roles[nxt] = f"n({j + 1},{len(c) + 1})"
        roles[nxt + 1] = f"n({j + 1},{len(c) + 2})"
        nxt += 2
        edges += [(a, b) for a in lits for b in conn]
        sets.append(conn)
    g = Graph(range(nxt), edges)
    return _certified(Instance(g, sets), Variant.IDCS, roles, ("2P4",))


def gen_flexible_p14_gadget(f: CnfFormula) -> GadgetOutput:
    """Terminal-pair instance with flexible induced-path semantics that is
    a yes-instance iff ``f`` is satisfiable."""
    n, p = f.num_vars, f.num_clauses
    for j, c in enumerate(f.clauses):
        if len(c) > 3:
            raise InvalidArgument(f"clause {j + 1} has {len(c)} literals; at most 3 allowed")
    width = n + p
    lv = list(range(n))
    lc = list(range(n, width))
    rv = list(range(width, width + n))
    rc = list(range(width + n, 2 * width))
    roles = {}
    for i in range(n):
        roles[lv[i]] = f"l-var({i + 1})"
        roles[rv[i]] = f"r-var({i + 1})"
    for j in range(p):
        roles[lc[j]] = f"l-clause({j + 1})"
        roles[rc[j]] = f"r-clause({j + 1})"
    edges = list(itertools.combinations(range(width), 2))
    edges += list(itertools.combinations(range(width, 2 * width), 2))
    nxt = 2 * width
    mt, mf = [], []
    for i in range(n):
        mt.append(nxt)
        mf.append(nxt + 1)
        roles[nxt] = f"m-true({i + 1})"
        roles[nxt + 1] = f"m-false({i + 1})"
        edges += [(nxt, lv[i]), (nxt, rv[i]), (nxt + 1, lv[i]), (nxt + 1, rv[i])]
        nxt += 2
    for j, c in enumerate(f.clauses):
        for lit in c:
            roles[nxt] = f"m-literal({j + 1},{lit})"
            edges += [(nxt, lc[j]), (nxt, rc[j])]
            edges.append((nxt, mt[-lit - 1] if lit < 0 else mf[lit - 1]))
            nxt += 1
    g = Graph(range(nxt), edges)
    pairs = [[lv[i], rv[i]] for i in range(n)] + [[lc[j], rc[j]] for j in range(p)]
    if not pairs:
        raise InvalidArgument("formula has no variables and no clauses")
    return _certified(Instance(g, pairs), Variant.FLEXIBLE_IDP, roles, ("P14",))


# -- instance transforms ---------------------------------------------------------------

def reduce_via_line_graph(inst: Instance) -> GadgetOutput:
    """Map a two-set disjoint connected subgraphs instance to an induced
    one: hang a pendant edge on every terminal and take the line graph.
    The new terminal sets are the pendant edges."""
    if inst.k != 2:
        raise InvalidArgument(f"line-graph reduction needs k = 2, got {inst.k}")
    g = inst.graph
    nxt = g.next_id()
    vertices = list(g.vertices)
    edges = g.edges()
    pendant = {}
    for z in sorted(inst.terminals):
        pendant[z] = nxt
        vertices.append(nxt)
        edges.append((z, nxt))
        nxt += 1
    lg, index = line_graph(Graph(vertices, edges))
    sets = [[index[(z, pendant[z])] for z in sorted(zs)] for zs in inst.terminal_sets]
    hung = set(pendant.values())
    roles = {i: f"pendant({u})" if v in hung else f"edge({u},{v})" for (u, v), i in index.items()}
    return _certified(Instance(lg, sets), Variant.IDCS, roles, ("K1,3",))


def subdivision_count(target_girth: int) -> int:
    if target_girth < 3:
        raise InvalidArgument("target girth must be at least 3")
    return math.ceil(target_girth / 3)


def reduce_via_subdivision(inst: Instance, target_girth: int) -> GadgetOutput:
    """Subdivide every edge ``ceil(g/3)`` times.  Connected subgraphs that
    are merely vertex-disjoint in the input become mutually induced, and the
    output has girth at least ``target_girth``."""
    t = subdivision_count(target_girth)
    if inst.ell != 2 and inst.k != 2:
        raise InvalidArgument("subdivision reduction expects terminal pairs (ell = 2) or two sets (k = 2)")
    g = subdivide_edges(inst.graph, t)
    gi = girth(g)
    if isinstance(gi, int) and gi < target_girth:
        raise AssertionError(f"subdivided graph has girth {gi} < {target_girth}")
    roles = {v: ("original" if v in inst.graph else g.label(v)) for v in g.vertices}
    out = Instance(g, inst.terminal_sets)
    return GadgetOutput(out, Variant.IDCS, roles, ())
