"""Command line front end.

Exit codes: 0 success, 1 a check failed (sequence does not sort, phase
violation, golden mismatch, or no search hits with ``--expect-some``),
2 bad input (unparseable document, no sequence family for n, solver limit).

Environment: ``BURNT_PANCAKES_WORKERS`` sets the default ``--workers`` and
``BURNT_PANCAKES_LIMITS`` (e.g. ``bfs=9,ida=10``) the solver limits. Flags
always win.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .corpus import CORPUS_IDS, first_divergence, load_entry
from .exact import LimitExceeded, Method, solve, t_bounds
from .formats import DocumentError, SequenceDocument, parse_document
from .search import (
    ExtensionSpec,
    SearchConfig,
    default_workers,
    exhaustive_search,
    extension_search,
    randomized_search,
)
from .sequences import FamilyError, generate
from .verify import InvalidFlipError, render_trace, trace, verify_sorts


class UsageFailure(Exception):
    """Bad input; reported with exit code 2."""


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_document(args) -> SequenceDocument:
    if getattr(args, "corpus", None):
        try:
            return load_entry(args.corpus, args.corpus_dir).document()
        except (KeyError, OSError) as exc:
            raise UsageFailure(str(exc)) from exc
    if getattr(args, "flips", None):
        if args.n is None:
            raise UsageFailure("--flips needs n")
        return SequenceDocument(args.n, tuple(args.flips))
    if args.file and args.file != "-":
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise UsageFailure(str(exc)) from exc
    elif args.file == "-" or getattr(args, "stdin", False):
        text = sys.stdin.read()
    elif args.n is not None:
        try:
            return SequenceDocument.from_seq(generate(args.n), f"burnt_pancakes {__version__}")
        except FamilyError as exc:
            raise UsageFailure(str(exc)) from exc
    else:
        raise UsageFailure("nothing to read: give a file, --stdin, --flips or --corpus")
    try:
        return parse_document(text, args.n)
    except DocumentError as exc:
        raise UsageFailure(str(exc)) from exc


def cmd_generate(args) -> int:
    try:
        seq = generate(args.n)
    except FamilyError as exc:
        raise UsageFailure(str(exc)) from exc
    doc = SequenceDocument.from_seq(seq, f"burnt_pancakes {__version__}")
    _write(doc.to_json() + "\n" if args.format == "json" else doc.to_text(), args.out)
    return 0


def cmd_verify(args) -> int:
    doc = _read_document(args)
    try:
        report = verify_sorts(doc.n, doc.flips, doc.phases)
    except InvalidFlipError as exc:
        raise UsageFailure(str(exc)) from exc
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        status = "OK" if report.ok else "FAIL"
        print(f"{status} n={report.n} sorted={report.sorted} flips={report.total_flips} "
              f"wastes={report.waste_count} improves={report.improve_count} "
              f"phase_violations={len(report.phase_violations)}")
        for v in report.phase_violations[:10]:
            print(f"  flip #{v.index} in {v.phase}: expected {v.expected.value}, got {v.actual.value}")
    return 0 if report.ok else 1


def cmd_trace(args) -> int:
    doc = _read_document(args)
    try:
        tr = trace(doc.n, doc.flips, phases=doc.phases)
    except InvalidFlipError as exc:
        raise UsageFailure(str(exc)) from exc
    if not args.quiet:
        _write(render_trace(tr, args.width), args.out)
    if args.golden:
        try:
            entry = load_entry(args.golden, args.corpus_dir)
        except (KeyError, OSError) as exc:
            raise UsageFailure(str(exc)) from exc
        at = first_divergence(tr.states, entry.states)
        if at is not None:
            print(f"golden {args.golden}: first divergence at state {at}", file=sys.stderr)
            return 1
        print(f"golden {args.golden}: all {len(tr.states)} states match", file=sys.stderr)
    return 0


def cmd_search(args) -> int:
    workers = args.workers or default_workers()
    cfg = SearchConfig(
        mode="randomized" if args.mode == "randomized" else "exhaustive",
        seed=args.seed,
        sample_count=args.samples,
        worker_count=workers,
        stop_after=args.stop_after,
        checkpoint_dir=args.checkpoint,
    )
    try:
        if args.mode == "exhaustive":
            result = exhaustive_search(args.n, cfg)
        elif args.mode == "randomized":
            result = randomized_search(args.n, cfg)
        else:
            base = args.n - 12
            try:
                skeleton = generate(base).phase("W")
            except FamilyError as exc:
                raise UsageFailure(f"extension needs a sequence for n-12={base}: {exc}") from exc
            result = extension_search(ExtensionSpec(base, skeleton), cfg)
    except ValueError as exc:
        raise UsageFailure(str(exc)) from exc
    record = result.to_dict()
    record["provenance"] = {"version": __version__, "workers": workers, "seed": args.seed,
                            "finished": time.strftime("%Y-%m-%dT%H:%M:%S")}
    if args.out:
        Path(args.out).write_text(json.dumps(record) + "\n")
    print(f"n={args.n} mode={args.mode} examined={result.examined} "
          f"successes={len(result.candidates)} time={result.elapsed:.2f}s")
    if args.expect_some and not result.candidates:
        return 1
    return 0


def cmd_solve(args) -> int:
    try:
        result = solve(args.n, args.method, args.cache, limit=args.limit)
    except LimitExceeded as exc:
        raise UsageFailure(str(exc)) from exc
    if args.json:
        print(json.dumps(result.to_dict()))
    else:
        print(f"T({args.n}) = {result.t_value}")
        print("witness: " + " ".join(map(str, result.witness)))
    return 0


def cmd_bounds(args) -> int:
    try:
        print(t_bounds(args.n))
    except ValueError as exc:
        raise UsageFailure(str(exc)) from exc
    return 0


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="sequence document (JSON or text); '-' for stdin")
    p.add_argument("--n", type=int, help="stack size when the document does not say")
    p.add_argument("--stdin", action="store_true", help="read the document from stdin")
    p.add_argument("--flips", type=int, nargs="+", help="flip lengths given inline")
    p.add_argument("--corpus", choices=CORPUS_IDS, help="use a reference sequence")
    p.add_argument("--corpus-dir", help="directory with corpus JSON files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burnt-pancakes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="optimal sequence for -I_n")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="replay a sequence and classify every flip")
    _add_input(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace", help="print every intermediate stack")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("file", nargs="?")
    p.add_argument("--stdin", action="store_true")
    p.add_argument("--flips", type=int, nargs="+")
    p.add_argument("--corpus", choices=CORPUS_IDS)
    p.add_argument("--corpus-dir")
    p.add_argument("--golden", choices=CORPUS_IDS, help="compare states with a reference trace")
    p.add_argument("--width", type=int, default=15)
    p.add_argument("--out")
    p.add_argument("--quiet", action="store_true", help="skip printing the trace")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("search", help="search waste-first sequences")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=("exhaustive", "randomized", "extension"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--workers", type=int)
    p.add_argument("--stop-after", type=int)
    p.add_argument("--checkpoint", help="directory for per-range progress files")
    p.add_argument("--out", help="results file (JSON)")
    p.add_argument("--expect-some", action="store_true", help="exit 1 when nothing is found")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("solve", help="exact T(n) by graph search")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=[m.value for m in Method], default="bfs")
    p.add_argument("--limit", type=int, help="largest n the solver accepts")
    p.add_argument("--cache", help="results cache directory")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="closed-form value or range of T(n)")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
