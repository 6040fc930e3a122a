"""Command line entry point.

Exit codes: 0 success, 1 internal inconsistency, 2 precondition failure,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certifier import InternalInconsistency, ThresholdNotMet, certify
from .extremal import build_extremal
from .graph import Graph, GraphParseError, ThresholdMode, format_graph, meets_threshold, parse_graph, parse_graph6
from .harness import UsageError, exhaustive, stress
from .proof import PreconditionBroken, run_refutation

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_PRECONDITION = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_graph(path: str, fmt: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_graph(text, fmt)


def _certify_one(g: Graph, r: int, mode: ThresholdMode, out) -> int:
    try:
        cert = certify(g, r, mode)
    except ThresholdNotMet as exc:
        _emit(exc.to_json(), out)
        return EXIT_PRECONDITION
    except InternalInconsistency as exc:
        _emit({"error": "internal_inconsistency", "message": str(exc)}, out)
        return EXIT_INCONSISTENT
    _emit(cert.to_json(), out)
    return EXIT_OK


def cmd_gen(args, out) -> int:
    if args.r < 2 or args.k < 1:
        print(f"gen: need r >= 2 and k >= 1, got r={args.r}, k={args.k}", file=sys.stderr)
        return EXIT_USAGE
    g, _ = build_extremal(args.r, args.k)
    text = format_graph(g, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    mode = ThresholdMode.parse(args.mode)
    if args.stdin_g6_stream:
        codes = set()
        for lineno, line in enumerate(sys.stdin, 1):
            line = line.strip().removeprefix(">>graph6<<")
            if not line:
                continue
            try:
                g = parse_graph6(line)
            except GraphParseError as exc:
                print(f"stdin line {lineno}: {exc}", file=sys.stderr)
                return EXIT_USAGE
            codes.add(_certify_one(g, args.r, mode, out))
        for code in (EXIT_INCONSISTENT, EXIT_PRECONDITION):
            if code in codes:
                return code
        return EXIT_OK
    if not args.file:
        print("certify: a graph file (or '-') or --stdin-g6-stream is required", file=sys.stderr)
        return EXIT_USAGE
    g = _read_graph(args.file, args.format)
    return _certify_one(g, args.r, mode, out)


def cmd_trace(args, out) -> int:
    mode = ThresholdMode.parse(args.mode)
    g = _read_graph(args.file, args.format)
    trace = run_refutation(g, args.r, mode)
    out.write(trace.dumps(indent=args.indent) + "\n")
    outcome = trace.outcome
    if isinstance(outcome, PreconditionBroken):
        if g.n == 0 or not meets_threshold(g, args.r, mode):
            return EXIT_PRECONDITION
        return EXIT_INCONSISTENT
    return EXIT_OK


def _write_report(report, args, out) -> int:
    text = report.dumps() + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


def cmd_exhaustive(args, out) -> int:
    report = exhaustive(args.r, args.n, args.mode, allow_slow=args.allow_slow, timing=args.timing)
    return _write_report(report, args, out)


def cmd_stress(args, out) -> int:
    report = stress(
        args.r,
        args.trials,
        args.seed,
        n_min=args.n_min,
        n_max=args.n_max,
        mode=args.mode,
        perturb_extremal=args.perturb_extremal,
        timing=args.timing,
    )
    return _write_report(report, args, out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chromthresh", description="Certify the clique / colouring / extremal trichotomy.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, r_default=None):
        p.add_argument("--r", type=int, required=r_default is None, default=r_default)
        p.add_argument("--mode", choices=["strict", "tight"], default="tight")

    p = sub.add_parser("gen", help="write H(r, k)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=["edgelist", "graph6"], default="edgelist")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("certify", help="emit a certificate for a graph")
    p.add_argument("file", nargs="?")
    common(p)
    p.add_argument("--format", choices=["auto", "edgelist", "graph6"], default="auto")
    p.add_argument("--stdin-g6-stream", action="store_true", help="certify one graph6 graph per stdin line")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("trace", help="run the refutation engine and print its trace")
    p.add_argument("file")
    common(p)
    p.add_argument("--format", choices=["auto", "edgelist", "graph6"], default="auto")
    p.add_argument("--indent", type=int)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("exhaustive", help="check every labelled graph on n vertices")
    common(p, r_default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--allow-slow", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical reports)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_exhaustive)

    p = sub.add_parser("stress", help="seeded random campaign")
    common(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--perturb-extremal", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_stress)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, GraphParseError, OSError) as exc:
        print(f"chromthresh {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
