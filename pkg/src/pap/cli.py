"""Command-line front end.

Exit codes: 0 yes / consistent, 1 no / inconsistent, 2 input or usage error,
3 capacity exceeded or internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import oracle
from .cost import get_cost
from .grounder import dump_ground, ground
from .kernel import (CapacityError, PapError, PapInstance, SolveResult,
                     SolveStats, sorted_atoms)
from .parser import ParseError, parse_atom, parse_atom_list, parse_pap
from .solver import Solver
from .stable import DEFAULT_NODE_CAP, stable_models

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(PapError):
    pass


def gen_tsp(n: int, w, literal: bool = False) -> str:
    """A ``.pap`` document encoding the travelling salesman instance ``w``.

    The visited/missedcity/badtour rules alone also admit covers by several
    disjoint cycles (two 2-cycles for n=4), so by default every city must in
    addition be reachable from city 1 along chosen arcs.  ``literal`` omits
    that requirement.
    """
    if n < 2:
        raise UsageError("need at least 2 cities")
    if len(w) != n or any(len(row) != n for row in w):
        raise UsageError("weight matrix must be %dx%d" % (n, n))
    for i in range(n):
        for j in range(n):
            v = w[i][j]
            if i == j:
                continue
            if isinstance(v, bool) or not isinstance(v, int):
                raise UsageError("weight w(%d,%d) is not an integer: %r" % (i + 1, j + 1, v))
            if v <= 0:
                raise UsageError("weight w(%d,%d) must be positive to serve as a penalty"
                                 % (i + 1, j + 1))
    lines = ["%% travelling salesman, %d cities" % n]
    lines += ["city(%d)." % i for i in range(1, n + 1)]
    lines += [
        "visited(I) :- city(I), c(J,I), c(I,K).",
        "missedcity :- city(I), not visited(I).",
        "badtour :- c(I,J), c(I,K), J != K.",
        "badtour :- c(J,I), c(K,I), J != K.",
    ]
    if not literal:
        lines += [
            "reached(J) :- c(1,J).",
            "reached(K) :- reached(J), c(J,K).",
            "missedcity :- city(I), not reached(I).",
        ]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                lines.append("#hypothesis c(%d,%d) penalty %d." % (i, j, w[i - 1][j - 1]))
    lines += ["#observe not missedcity.", "#observe not badtour.", "#cost sum."]
    return "\n".join(lines) + "\n"


def read_weights(text: str):
    rows = [line.split() for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith("%")]
    try:
        return [[int(x) for x in row] for row in rows]
    except ValueError as e:
        raise UsageError("non-integer weight: %s" % e) from None


def format_cost(c: float) -> str:
    return "%.9g" % c


def format_set(atoms, spaced=True) -> str:
    body = ", ".join(str(a) for a in atoms)
    if spaced:
        return "{ %s }" % body if body else "{ }"
    return "{%s}" % body


def result_json(r: SolveResult) -> dict:
    return {
        "consistent": r.consistent,
        "optimal_cost": None if r.optimal_cost is None else float(format_cost(r.optimal_cost)),
        "solutions": [[str(a) for a in s] for s in r.solutions],
        "stats": {"nodes": r.stats.nodes_explored, "checks": r.stats.admissibility_checks,
                  "ms": int(round(r.stats.elapsed_time * 1000))},
    }


def _oracle_result(p: PapInstance, want_all: bool) -> SolveResult:
    t0 = time.perf_counter()
    o = oracle.oracle_pap(p)
    sols = o.sorted_opt()
    if not want_all:
        sols = sols[:1]
    stats = SolveStats(elapsed_time=time.perf_counter() - t0, admissibility_checks=1 << len(p.hypotheses))
    return SolveResult(o.consistent, o.optimal_cost, sols, stats)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cost", help="override the #cost directive (sum, count, prob, max)")
    common.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    common.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP,
                        help="search node limit (default %(default)s)")

    ap = argparse.ArgumentParser(prog="pap", description="Abduction with penalization solver.")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("file", nargs="?", default="-", help="input .pap file ('-' for stdin)")
        return sp

    cmd("check", "is there an admissible solution?")
    cmd("solve", "compute the optimal cost and solutions").add_argument(
        "--all", action="store_true", help="list every optimal solution")
    cmd("admissible", "is the given hypothesis set admissible?").add_argument(
        "--hypotheses", required=True, help="comma separated atoms")
    cmd("optimal", "is the given hypothesis set optimal?").add_argument(
        "--hypotheses", required=True, help="comma separated atoms")
    cmd("relevant", "is the hypothesis in some optimal solution?").add_argument("atom")
    cmd("necessary", "is the hypothesis in every optimal solution?").add_argument("atom")
    cmd("models", "stable models of the program without hypotheses")
    cmd("ground", "print the ground program")

    gen = sub.add_parser("gen", help="generate instances")
    gensub = gen.add_subparsers(dest="family", required=True)
    tsp = gensub.add_parser("tsp", help="travelling salesman instance")
    tsp.add_argument("--n", type=int, required=True)
    tsp.add_argument("--weights", required=True, help="file with an n x n integer matrix")
    tsp.add_argument("--literal", action="store_true",
                     help="omit the rules that exclude disconnected subtours")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args, err) -> PapInstance:
    warnings = []
    p = parse_pap(_read(args.file), warnings)
    for w in warnings:
        print("%s: %s" % (args.file, w), file=err)
    if args.cost:
        get_cost(args.cost)
        p = p.with_cost(args.cost)
    return p


def _decision(args, out, answer: bool, extra=None) -> int:
    if args.json:
        doc = {"command": args.command, "answer": answer}
        doc.update(extra or {})
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print("yes" if answer else "no", file=out)
    return EXIT_YES if answer else EXIT_NO


def _run(args, out, err) -> int:
    if args.command == "gen":
        w = read_weights(_read(args.weights))
        out.write(gen_tsp(args.n, w, literal=args.literal))
        return 0

    p = _load(args, err)
    opts = {"node_cap": args.node_cap}

    if args.command == "ground":
        out.write(dump_ground(ground(p.program, p.hypotheses)))
        return 0

    if args.command == "models":
        g = ground(p.program)
        if args.oracle:
            ms = sorted(oracle.oracle_stable_models(g), key=sorted)
        else:
            ms = stable_models(g, node_cap=args.node_cap)
        ms = sorted((sorted_atoms(g.decode(m)) for m in ms),
                    key=lambda m: [a.sort_key() for a in m])
        if args.json:
            print(json.dumps({"models": [[str(a) for a in m] for m in ms]}), file=out)
        else:
            for m in ms:
                print(format_set(m, spaced=False), file=out)
        return 0

    if args.command == "solve":
        if args.oracle:
            r = _oracle_result(p, args.all)
        else:
            r = Solver(p, **opts).solve(args.all)
        if args.json:
            print(json.dumps(result_json(r)), file=out)
        elif not r.consistent:
            print("inconsistent", file=out)
        else:
            for s in r.solutions:
                print("cost=%s  %s" % (format_cost(r.optimal_cost), format_set(s)), file=out)
        return EXIT_YES if r.consistent else EXIT_NO

    if args.oracle:
        o = oracle.oracle_pap(p)
        if args.command == "check":
            return _decision(args, out, o.consistent)
        if args.command in ("admissible", "optimal"):
            s = frozenset(parse_atom_list(args.hypotheses))
            _check_hypotheses(p, s)
            return _decision(args, out, s in (o.adm if args.command == "admissible" else o.opt))
        h = parse_atom(args.atom)
        _check_hypotheses(p, [h])
        if not o.consistent:
            print("note: instance is inconsistent", file=err)
        if args.command == "relevant":
            return _decision(args, out, h in o.relevant())
        return _decision(args, out, h in o.necessary())

    solver = Solver(p, **opts)
    if args.command == "check":
        return _decision(args, out, solver.is_consistent())
    if args.command == "admissible":
        return _decision(args, out, solver.is_admissible(parse_atom_list(args.hypotheses)))
    if args.command == "optimal":
        return _decision(args, out, solver.is_optimal(parse_atom_list(args.hypotheses)))
    h = parse_atom(args.atom)
    answer = solver.is_relevant(h) if args.command == "relevant" else solver.is_necessary(h)
    if solver.optimal_cost() is None:
        print("note: instance is inconsistent", file=err)
    return _decision(args, out, answer, {"consistent": solver.optimal_cost() is not None})


def _check_hypotheses(p: PapInstance, atoms):
    for a in atoms:
        if a not in p.hypotheses:
            raise PapError("%s is not a hypothesis" % a)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0
    try:
        return _run(args, out, err)
    except ParseError as e:
        name = getattr(args, "file", "<input>")
        print("%s:%s" % (name, e.diagnostic), file=err)
        return EXIT_INPUT
    except CapacityError as e:
        print("capacity exceeded: %s" % e, file=err)
        return EXIT_CAPACITY
    except (OSError, PapError) as e:
        print("error: %s" % e, file=err)
        return EXIT_INPUT
    except Exception as e:  # pragma: no cover - last resort
        print("internal error: %r" % e, file=err)
        return EXIT_CAPACITY


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
