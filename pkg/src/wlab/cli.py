"""Command-line frontend: single checks, sweeps, scans, diagnostics.

Machine-readable records go to stdout (JSON lines by default, CSV for
sweeps on request); progress and diagnostics go to stderr.  Exit codes:
0 clean, 1 usage or I/O error, 2 counterexample found, 3 unusable
checkpoint.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import verifier
from ._checkpoint import ROUTES
from .errors import BadArgs, CheckpointCorrupt, WlabError
from .kummer import carry_count, padic_expand
from .verifier import CarryElimination, Classification, JonesVerdict, SweepReport

SCHEMA_VERSION = 1

EXIT_CLEAN = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_CHECKPOINT = 3

_CSV_HEADER = "n,class,route,p,carries,residue,modulus"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _decimal(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")


def _dump(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def _verdict_record(verdict: JonesVerdict) -> dict:
    record = {
        "v": SCHEMA_VERSION,
        "n": verdict.n,
        "class": verdict.classification.value,
        "route": verdict.route,
    }
    witness = verdict.witness
    if isinstance(witness, CarryElimination):
        record["p"] = witness.p
        record["carries"] = witness.carries
        if witness.prop1 is not None:
            record["a"] = witness.prop1.a
        record["b"] = witness.b
    if verdict.residue is not None:
        record["residue"] = verdict.residue
        record["modulus"] = verdict.modulus
    return record


def _csv_row(verdict: JonesVerdict) -> str:
    witness = verdict.witness
    p = carries = ""
    if isinstance(witness, CarryElimination):
        p, carries = witness.p, witness.carries
    residue = "" if verdict.residue is None else verdict.residue
    modulus = "" if verdict.modulus is None else verdict.modulus
    return (f"{verdict.n},{verdict.classification.value},{verdict.route or ''},"
            f"{p},{carries},{residue},{modulus}")


class _SweepEmitter:
    """Streams counterexample records and the final summary to stdout."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        if fmt == "csv":
            print(_CSV_HEADER)

    def verdict(self, verdict: JonesVerdict) -> None:
        if self.fmt == "csv":
            print(_csv_row(verdict))
        else:
            print(_dump(_verdict_record(verdict)))

    def summary(self, report: SweepReport) -> None:
        if self.fmt == "csv":
            tallies = " ".join(f"{name}={report.counts[name]}" for name in ROUTES)
            print(f"# sweep_summary v={SCHEMA_VERSION} lo={report.lo} hi={report.hi} "
                  f"cursor={report.cursor} {tallies} "
                  f"counterexamples={len(report.counterexamples)}")
        else:
            print(_dump({
                "v": SCHEMA_VERSION,
                "type": "sweep_summary",
                "lo": report.lo,
                "hi": report.hi,
                "cursor": report.cursor,
                "counts": {name: report.counts[name] for name in ROUTES},
                "counterexamples": len(report.counterexamples),
            }))


def _progress_printer(lo: int, hi: int):
    span = hi - lo + 1
    last = 0.0

    def callback(cursor: int) -> None:
        nonlocal last
        now = time.monotonic()
        if now - last >= 1.0 or cursor == hi:
            print(f"progress: {cursor - lo + 1}/{span} (cursor={cursor})",
                  file=sys.stderr, flush=True)
            last = now

    return callback


def _env_jobs() -> int:
    raw = os.environ.get("WLAB_JOBS")
    if raw is None:
        return 1
    try:
        jobs = int(raw, 10)
    except ValueError:
        raise BadArgs(f"WLAB_JOBS must be a decimal integer, got {raw!r}")
    if jobs < 1:
        raise BadArgs(f"WLAB_JOBS must be >= 1, got {jobs}")
    return jobs


def _cmd_check(args) -> int:
    if args.n < 2 or args.n > verifier.DIRECT_LIMIT:
        raise BadArgs(f"check requires 2 <= n <= {verifier.DIRECT_LIMIT}, got {args.n}")
    verdict = verifier.classify(args.n)
    print(_dump(_verdict_record(verdict)))
    if verdict.classification is Classification.COUNTEREXAMPLE:
        return EXIT_COUNTEREXAMPLE
    return EXIT_CLEAN


def _cmd_sweep(args) -> int:
    jobs = args.jobs if args.jobs is not None else _env_jobs()
    if jobs < 1:
        raise BadArgs(f"--jobs must be >= 1, got {jobs}")
    if args.resume or args.resume_force:
        if not args.checkpoint:
            raise BadArgs("--resume needs --checkpoint FILE")
    emitter = _SweepEmitter(args.emit)
    progress = None if args.quiet else _progress_printer(args.lo, args.hi)
    report = verifier.sweep(
        args.lo, args.hi, chunk_size=args.chunk, jobs=jobs,
        checkpoint_path=args.checkpoint, resume=args.resume,
        resume_force=args.resume_force, progress=progress,
        on_counterexample=emitter.verdict)
    emitter.summary(report)
    if report.counterexamples:
        return EXIT_COUNTEREXAMPLE
    return EXIT_CLEAN


def _cmd_scan_wolstenholme(args) -> int:
    found = verifier.wolstenholme_prime_scan(args.limit)
    for p in found:
        print(_dump({"v": SCHEMA_VERSION, "type": "wolstenholme_prime", "p": p}))
    print(_dump({"v": SCHEMA_VERSION, "type": "scan_summary",
                 "limit": args.limit, "found": len(found)}))
    return EXIT_CLEAN


def _cmd_consecutive(args) -> int:
    pairs = verifier.consecutive_prime_products(args.limit)
    for pair in pairs:
        witness = pair.witness
        record = {"v": SCHEMA_VERSION, "type": "consecutive_pair",
                  "q": pair.q, "p": pair.p, "n": pair.n,
                  "carries": witness.carries}
        if witness.prop1 is not None:
            record["a"] = witness.prop1.a
        record["b"] = witness.b
        print(_dump(record))
    print(_dump({"v": SCHEMA_VERSION, "type": "consecutive_summary",
                 "limit": args.limit, "pairs": len(pairs)}))
    return EXIT_CLEAN


def _cmd_carries(args) -> int:
    count = carry_count(args.x, args.y, args.p)
    print(_dump({"v": SCHEMA_VERSION, "type": "carries",
                 "x": args.x, "y": args.y, "p": args.p, "carries": count}))
    return EXIT_CLEAN


def _cmd_expand(args) -> int:
    expansion = padic_expand(args.n, args.p)
    print(_dump({"v": SCHEMA_VERSION, "type": "padic_expansion",
                 "n": args.n, "p": args.p, "digits": list(expansion.digits)}))
    return EXIT_CLEAN


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="wlab",
        description="Verify w_n = C(2n-1, n-1) against the congruence "
                    "w_n ≡ 1 (mod n³): confirmation for primes, "
                    "elimination for everything else.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    check = sub.add_parser("check", help="classify a single n")
    check.add_argument("n", type=_decimal)
    check.set_defaults(func=_cmd_check)

    sweep = sub.add_parser("sweep", help="classify every n in [lo, hi]")
    sweep.add_argument("lo", type=_decimal)
    sweep.add_argument("hi", type=_decimal)
    sweep.add_argument("--jobs", type=_decimal, default=None,
                       help="worker processes (default: WLAB_JOBS or 1)")
    sweep.add_argument("--chunk", type=_decimal, default=4096,
                       help="values per work unit (default 4096)")
    sweep.add_argument("--checkpoint", metavar="FILE",
                       help="record completed prefixes to FILE")
    sweep.add_argument("--resume", action="store_true",
                       help="continue after the checkpoint cursor")
    sweep.add_argument("--resume-force", action="store_true",
                       help="like --resume, but restart when the checkpoint "
                            "is unusable instead of failing")
    sweep.add_argument("--emit", choices=("jsonl", "csv"), default="jsonl",
                       help="record format for stdout (default jsonl)")
    sweep.add_argument("--quiet", action="store_true",
                       help="suppress progress lines on stderr")
    sweep.set_defaults(func=_cmd_sweep)

    scan = sub.add_parser("scan-wolstenholme",
                          help="primes p <= limit with w_p ≡ 1 (mod p⁴)")
    scan.add_argument("limit", type=_decimal)
    scan.set_defaults(func=_cmd_scan_wolstenholme)

    consecutive = sub.add_parser(
        "consecutive",
        help="eliminate products of consecutive odd prime pairs <= limit")
    consecutive.add_argument("limit", type=_decimal)
    consecutive.set_defaults(func=_cmd_consecutive)

    carries = sub.add_parser("carries",
                             help="carries when adding x and y in base p")
    carries.add_argument("x", type=_decimal)
    carries.add_argument("y", type=_decimal)
    carries.add_argument("p", type=_decimal)
    carries.set_defaults(func=_cmd_carries)

    expand = sub.add_parser("expand", help="base-p digits of n")
    expand.add_argument("n", type=_decimal)
    expand.add_argument("p", type=_decimal)
    expand.set_defaults(func=_cmd_expand)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckpointCorrupt as exc:
        print(f"wlab: checkpoint error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except WlabError as exc:
        print(f"wlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"wlab: i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
