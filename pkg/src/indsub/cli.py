"""Command-line entry point: ``indsub <command> ...``.

Exit codes: 0 yes / valid / free, 1 no / invalid / contains, 2 gave up,
3 usage, input or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .blob import terminal_blob
from .errors import InvalidArgument, ParseError, ResourceLimit
from .graph import Acyclic, girth, read_graph, write_graph
from .instance import Reduced, normalize, parse_solution, read_instance, solution_json, solution_size_bound, \
    terminals_json, verify_flexible_solution, verify_solution
from .mis import has_independent_set, max_independent_set
from .patterns import GENERAL, EllFixed, KFixed, contains_induced, is_h_free, parse_pattern
from .reductions import (gen_flexible_p14_gadget, gen_monotone_gadget, gen_nae_gadget, read_dimacs,
                         reduce_via_line_graph, reduce_via_subdivision)
from .solvers import Budget, dispatch, oracle_flexible_idp, oracle_idcs
from .suites import SUITE_HELP, SUITES

EXIT = {"yes": 0, "no": 1, "gave_up": 2}
ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ERROR, f"{self.prog}: error: {message}\n")


def emit(report: dict) -> None:
    print(json.dumps(report, sort_keys=True, indent=2))


def _budget(args) -> Budget | None:
    fields = {}
    if args.budget_ms is not None:
        fields["time_limit"] = args.budget_ms / 1000.0
    if args.budget_branches is not None:
        fields["max_branches"] = args.budget_branches
    if args.budget_subset is not None:
        fields["max_subset_size"] = args.budget_subset
    return Budget(**fields) if fields else None


def _mode(args):
    if args.mode == "ell":
        return EllFixed(args.ell)
    if args.mode == "k":
        return KFixed(args.k)
    return GENERAL


def _dump_blob(inst, pattern, path) -> int:
    out = normalize(inst)
    if not isinstance(out, Reduced):
        nodes = {"nodes": []}
    else:
        red = out.instance
        if pattern is not None and pattern.linear_forest is not None:
            cap = max(solution_size_bound(pattern, red, i) for i in range(red.k))
        else:
            cap = len(red.graph)
        nodes = terminal_blob(red, cap, minimal=True).to_json()
    with open(path, "w") as fh:
        json.dump(nodes, fh, sort_keys=True, indent=1)
    return len(nodes["nodes"])


def cmd_solve(args) -> int:
    inst = read_instance(args.graph, args.terminals)
    pattern = parse_pattern(args.pattern) if args.pattern else None
    budget = _budget(args)
    start = time.perf_counter()
    certificates = []
    if args.flexible:
        ans = oracle_flexible_idp(inst, budget)
    elif args.oracle or pattern is None:
        ans = oracle_idcs(inst, budget, pattern if pattern is not None and pattern.linear_forest else None)
        if pattern is not None:
            if not is_h_free(inst.graph, pattern):
                raise InvalidArgument(f"graph is not {pattern}-free")
            certificates.append(f"{pattern}-free")
    else:
        ans = dispatch(inst, pattern, _mode(args), budget)
        certificates.append(f"{pattern}-free")
    wall = time.perf_counter() - start
    sol = solution_json(ans.solution) if ans.is_yes else (
        {"status": "no"} if ans.is_no else {"status": "gave_up"})
    if args.out and not ans.gave_up:
        with open(args.out, "w") as fh:
            json.dump(sol, fh, sort_keys=True)
    report = {
        "command": "solve",
        "argv": args.argv,
        "answer": ans.status.value,
        "route": ans.route,
        "reason": ans.reason,
        "wall_time": round(wall, 4),
        "witness_file": args.out if args.out and not ans.gave_up else None,
        "certificates": certificates,
        "budget": {"branches": ans.branches},
        "solution": sol,
    }
    if args.dump_blob:
        report["blob_nodes"] = _dump_blob(inst, pattern, args.dump_blob)
        report["blob_file"] = args.dump_blob
    emit(report)
    return EXIT[ans.status.value]


def cmd_verify(args) -> int:
    inst = read_instance(args.graph, args.terminals)
    with open(args.solution) as fh:
        sol = parse_solution(fh.read())
    if sol is None:
        raise InvalidArgument("solution file says 'no'; there is no witness to verify")
    verdict = verify_flexible_solution(inst, sol) if args.flexible else verify_solution(inst, sol)
    if verdict:
        print("VALID")
        return 0
    print(f"INVALID clause ({verdict.clause}): {verdict.detail}")
    return 1


def cmd_recognize(args) -> int:
    g = read_graph(args.graph)
    h = parse_pattern(args.pattern)
    witness = contains_induced(g, h)
    if witness is None:
        print("FREE")
        return 0
    print(" ".join(map(str, sorted(witness))))
    return 1


def cmd_mis(args) -> int:
    g = read_graph(args.graph)
    if args.target is None:
        res = max_independent_set(g, args.budget)
        emit({"command": "mis", "size": res.size, "set": sorted(res.witness)})
        return 0
    found = has_independent_set(g, args.target, args.budget)
    emit({"command": "mis", "target": args.target, "found": found is not None,
          "set": sorted(found) if found is not None else None})
    return 0 if found is not None else 1


def _write_gadget(out, prefix: str, certify: bool, extra: dict) -> dict:
    inst = out.instance
    write_graph(inst.graph, f"{prefix}.graph")
    with open(f"{prefix}.terminals.json", "w") as fh:
        fh.write(terminals_json(inst) + "\n")
    with open(f"{prefix}.roles.json", "w") as fh:
        json.dump({str(v): r for v, r in sorted(out.vertex_roles.items())}, fh, indent=1, sort_keys=True)
    report = {
        "variant": out.variant.value,
        "vertices": len(inst.graph),
        "edges": inst.graph.num_edges,
        "k": inst.k,
        "files": [f"{prefix}.graph", f"{prefix}.terminals.json", f"{prefix}.roles.json"],
        **extra,
    }
    if certify:
        report["certificates"] = [f"{spec}-free" for spec in out.certify()]
    return report


GADGETS = {"nae": gen_nae_gadget, "monotone": gen_monotone_gadget, "flexible": gen_flexible_p14_gadget}


def cmd_generate(args) -> int:
    f = read_dimacs(args.source)
    out = GADGETS[args.gadget](f)
    report = _write_gadget(out, args.out, args.certify, {"gadget": args.gadget, "num_vars": f.num_vars,
                                                          "num_clauses": f.num_clauses})
    emit({"command": "generate", **report})
    return 0


def cmd_transform(args) -> int:
    inst = read_instance(args.graph, args.terminals)
    if args.line_graph:
        out = reduce_via_line_graph(inst)
        extra = {"transform": "line-graph"}
    else:
        out = reduce_via_subdivision(inst, args.girth)
        gi = girth(out.instance.graph)
        extra = {"transform": "subdivision", "target_girth": args.girth,
                 "girth": "acyclic" if isinstance(gi, Acyclic) else gi}
    report = _write_gadget(out, args.out, args.certify, extra)
    emit({"command": "transform", **report})
    return 0


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
    lines += ["  ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols) for r in rows]
    return "\n".join(lines)


def cmd_bench(args) -> int:
    if args.list:
        for name in SUITES:
            print(f"{name:20s} {SUITE_HELP[name]}")
        return 0
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        fn = SUITES[name]
        kwargs = {"seed": args.seed}
        if args.count is not None and name != "dichotomy":
            kwargs["count"] = args.count
        results.append(fn(**kwargs))
    if args.json:
        emit({"command": "bench", "seed": args.seed, "suites": [r.to_json() for r in results]})
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"== {r.name} seed={r.seed}: {status} {r.cases - len(r.failures)}/{r.cases} "
                  f"in {r.seconds:.1f}s")
            print(_table(r.rows))
            for line in r.failures[:10]:
                print(f"  ! {line}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="indsub", description="Mutually induced connected subgraphs on H-free graphs.")
    p.add_argument("--version", action="version", version=f"indsub {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide an instance")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-t", "--terminals", required=True)
    s.add_argument("--pattern", help="forbidden induced subgraph H, e.g. P6 or 2P4")
    s.add_argument("--mode", choices=("general", "ell", "k"), default="general")
    s.add_argument("--ell", type=int, default=2, help="terminal set size bound for --mode ell")
    s.add_argument("--k", type=int, default=2, help="number of sets for --mode k")
    s.add_argument("--oracle", action="store_true", help="use the exhaustive oracle")
    s.add_argument("--flexible", action="store_true", help="flexible induced paths (terminal pairs)")
    s.add_argument("-o", "--out", help="write the solution JSON here")
    s.add_argument("--dump-blob", metavar="FILE", help="write the terminal blob node sets here")
    s.add_argument("--budget-ms", type=int)
    s.add_argument("--budget-branches", type=int)
    s.add_argument("--budget-subset", type=int)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("-g", "--graph", required=True)
    v.add_argument("-t", "--terminals", required=True)
    v.add_argument("-s", "--solution", required=True)
    v.add_argument("--flexible", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("recognize", help="test H-freeness")
    r.add_argument("-g", "--graph", required=True)
    r.add_argument("--pattern", required=True)
    r.set_defaults(func=cmd_recognize)

    m = sub.add_parser("mis", help="maximum independent set")
    m.add_argument("-g", "--graph", required=True)
    m.add_argument("--target", type=int, help="only decide whether an independent set this large exists")
    m.add_argument("--budget", type=int, default=5_000_000, help="search node limit")
    m.set_defaults(func=cmd_mis)

    gen = sub.add_parser("generate", help="build a hardness gadget from a DIMACS formula")
    gen.add_argument("--from", dest="source", required=True)
    gen.add_argument("--gadget", choices=sorted(GADGETS), required=True)
    gen.add_argument("-o", "--out", default="gadget", help="output prefix")
    gen.add_argument("--certify", action="store_true")
    gen.set_defaults(func=cmd_generate)

    t = sub.add_parser("transform", help="subdivide or take a line graph of an instance")
    t.add_argument("-g", "--graph", required=True)
    t.add_argument("-t", "--terminals", required=True)
    how = t.add_mutually_exclusive_group(required=True)
    how.add_argument("--girth", type=int)
    how.add_argument("--line-graph", action="store_true")
    t.add_argument("-o", "--out", default="transformed", help="output prefix")
    t.add_argument("--certify", action="store_true")
    t.set_defaults(func=cmd_transform)

    b = sub.add_parser("bench", help="run the randomized acceptance suites")
    b.add_argument("--suite", choices=["all", *SUITES], default="all")
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--count", type=int, help="override the per-suite case count")
    b.add_argument("--list", action="store_true")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"indsub {args.command}: gave up: {exc}", file=sys.stderr)
        return EXIT["gave_up"]
    except (InvalidArgument, ParseError, OSError) as exc:
        print(f"indsub {args.command}: error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
