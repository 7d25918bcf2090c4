"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 input error, 4 inadmissible
operation, 5 search verdict UNKNOWN.  Every failure prints exactly one line
``ERROR <code>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Optional

from . import core, explore, io, moves, shellings
from .errors import NotPseudomanifold, PachnerError, TraceDivergence, UnsupportedDimension
from .trace import Trace, replay

EXIT_USAGE = 2
EXIT_UNKNOWN = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _labels(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"expected integer labels, got {text!r}") from None


def _emit(C: core.Complex, out: Optional[str]) -> None:
    if out:
        io.save(C, out)
    else:
        sys.stdout.write(io.format_facet_list(C))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def describe(C: core.Complex) -> list[str]:
    fv = core.f_vector(C)
    lines = [
        f"dim: {C.dim}",
        f"vertices: {C.n_vertices}",
        f"facets: {len(C)}",
        "f-vector: " + " ".join(map(str, fv.proper)),
        f"euler: {fv.euler}",
    ]
    closed = core.is_closed_pseudomanifold(C)
    lines.append(f"closed: {_yes(closed)}")
    try:
        bd = core.boundary_complex(C)
        lines.append("boundary: none" if bd is None else f"boundary: {len(bd)} facets")
    except NotPseudomanifold:
        lines.append("boundary: n/a (not a pseudomanifold)")
    except UnsupportedDimension:
        lines.append("boundary: n/a")
    lines.append(f"orientable: {_yes(core.is_orientable(C))}" if closed else "orientable: n/a")
    lines.append(f"manifold: {_yes(core.is_combinatorial_manifold(C))}" if C.dim <= 3 else "manifold: n/a")
    return lines


# -- verbs ------------------------------------------------------------------------------


def cmd_gen(args) -> int:
    operands = tuple(io.load(p) for p in args.input or ())
    need = {"cone": 1, "suspension": 1, "join": 2}.get(args.kind, 0)
    if len(operands) != need:
        raise UsageError(f"--kind {args.kind} needs {need} --input file(s)")
    if need == 0 and args.dim is None:
        raise UsageError(f"--kind {args.kind} needs --dim")
    _emit(core.generate(args.kind, args.dim, operands), args.out)
    return 0


def cmd_info(args) -> int:
    print("\n".join(describe(io.load(args.file))))
    return 0


def cmd_moves(args) -> int:
    C = io.load(args.file)
    for site in moves.enumerate_moves(C, kind=args.kind):
        print(site)
    return 0


def cmd_apply(args) -> int:
    C = io.load(args.file)
    a = _labels(args.a)
    if args.b is not None:
        site = moves.MoveSite(a, _labels(args.b))
    else:
        if len(a) != C.dim + 1:
            raise UsageError("--b is required unless A is a facet")
        site = moves.MoveSite(a, (C.fresh_label,))
    _emit(moves.apply_move(C, site), args.out)
    return 0


def cmd_walk(args) -> int:
    C = io.load(args.file)
    end, trace = explore.random_walk(C, args.steps, args.budget, args.seed)
    trace.start = args.file
    if args.trace:
        Path(args.trace).write_text(trace.to_text())
    _emit(end, args.out)
    return 0


def cmd_simplify(args) -> int:
    C = io.load(args.file)
    report = explore.simplify(
        C, args.seed, max_steps=args.max_steps, restarts=args.restarts,
        anneal_start=args.anneal_start, jobs=args.jobs,
    )
    report.trace.start = args.file
    if args.report:
        Path(args.report).write_text(report.to_json(include_timing=args.timing))
    if args.trace:
        Path(args.trace).write_text(report.trace.to_text())
    print(f"verdict: {report.verdict}")
    for key, value in report.stats.items():
        if isinstance(value, dict):
            value = " ".join(f"{k}:{v}" for k, v in value.items())
        elif isinstance(value, list):
            value = " ".join(map(str, value))
        print(f"{key}: {value}")
    if args.timing:
        print(f"elapsed: {report.elapsed:.3f}s")
    return 0 if report.verdict == "REDUCED" else EXIT_UNKNOWN


def cmd_flipgraph(args) -> int:
    C = io.load(args.file)
    G = explore.build_flip_graph(C, args.budget, jobs=args.jobs)
    G.export(args.out)
    by_size = Counter(X.n_vertices for X in G.nodes)
    print(f"nodes: {len(G)}")
    print(f"edges: {G.n_edges}")
    print(f"connected: {_yes(G.is_connected())}")
    print("classes by vertex count: " + " ".join(f"{n}:{by_size[n]}" for n in sorted(by_size)))
    return 0


def cmd_shell(args) -> int:
    C = io.load(args.file)
    if args.to_facet:
        if args.seed is None:
            raise UsageError("--to-facet requires --seed")
        trace = shellings.shell_to_facet(C, args.seed, attempts=args.attempts)
        if trace is None:
            print("verdict: UNKNOWN")
            return EXIT_UNKNOWN
        trace.start = args.file
        if args.trace:
            Path(args.trace).write_text(trace.to_text())
        print("verdict: SHELLED")
        for step in trace.steps:
            print(step)
        return 0
    for site in shellings.enumerate_shellings(C):
        witness = shellings.apply_shelling(C, site).witness
        print(f"S {site}  boundary-move: {witness.site}  witness: {'verified' if witness.verify() else 'FAILED'}")
    return 0


def cmd_verify(args) -> int:
    C = io.load(args.file)
    try:
        trace = Trace.from_text(Path(args.trace).read_text())
    except OSError as exc:
        raise io.FormatError(f"cannot read {args.trace}: {exc.strerror}") from None
    end = replay(C, trace)
    print(f"replayed: {len(trace)} steps")
    if args.expect:
        if end != io.load(args.expect):
            raise TraceDivergence(len(trace), f"final complex differs from {args.expect}")
        print("result: exact-match")
    elif trace.end_digest:
        print("result: exact-match")
    else:
        print("result: replayed (no reference to compare)")
    print(f"digest: {io.facet_digest(end)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pachner", description="Pachner moves and elementary shellings on simplicial complexes.")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="generate a standard complex")
    g.add_argument("--kind", required=True, choices=core.GENERATOR_KINDS)
    g.add_argument("--dim", type=int)
    g.add_argument("--input", action="append", help="operand file (cone, suspension; twice for join)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    i = sub.add_parser("info", help="print invariants")
    i.add_argument("file")
    i.set_defaults(func=cmd_info)

    m = sub.add_parser("moves", help="list admissible move sites")
    m.add_argument("file")
    m.add_argument("--kind", type=int)
    m.set_defaults(func=cmd_moves)

    a = sub.add_parser("apply", help="apply one move")
    a.add_argument("file")
    a.add_argument("--a", required=True)
    a.add_argument("--b")
    a.add_argument("--out")
    a.set_defaults(func=cmd_apply)

    w = sub.add_parser("walk", help="random walk of moves")
    w.add_argument("file")
    w.add_argument("--steps", type=int, required=True)
    w.add_argument("--budget", type=int)
    w.add_argument("--seed", type=int, required=True)
    w.add_argument("--trace")
    w.add_argument("--out")
    w.set_defaults(func=cmd_walk)

    s = sub.add_parser("simplify", help="bistellar simplification towards the boundary of a simplex")
    s.add_argument("file")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--max-steps", type=int, default=explore.DEFAULT_MAX_STEPS)
    s.add_argument("--restarts", type=int, default=explore.DEFAULT_RESTARTS)
    s.add_argument("--anneal-start", type=float, default=explore.ANNEAL_START)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--report")
    s.add_argument("--trace")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_simplify)

    f = sub.add_parser("flipgraph", help="enumerate the flip graph within a vertex budget")
    f.add_argument("file")
    f.add_argument("--budget", type=int, required=True)
    f.add_argument("--out", required=True)
    f.add_argument("--jobs", type=int, default=1)
    f.set_defaults(func=cmd_flipgraph)

    sh = sub.add_parser("shell", help="list or search elementary shellings")
    sh.add_argument("file")
    sh.add_argument("--to-facet", action="store_true")
    sh.add_argument("--seed", type=int)
    sh.add_argument("--attempts", type=int, default=shellings.DEFAULT_ATTEMPTS)
    sh.add_argument("--trace")
    sh.set_defaults(func=cmd_shell)

    v = sub.add_parser("verify", help="replay a trace")
    v.add_argument("file")
    v.add_argument("--trace", required=True)
    v.add_argument("--expect")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"ERROR UsageError: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PachnerError as exc:
        print(f"ERROR {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_status


if __name__ == "__main__":
    sys.exit(main())
