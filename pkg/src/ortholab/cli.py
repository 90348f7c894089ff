"""Command line entry point: ``ortholab run | verify-all | grammar``."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from ortholab import __version__
from ortholab.config import DEFAULT_SEED
from ortholab.dsl import GRAMMAR
from ortholab.errors import OrthoLabError
from ortholab.runner import EXIT_INVALID, render_json, render_text, run_text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ortholab", description="Exact checks for polynomials on Riesz spaces.")
    parser.add_argument("--version", action="version", version=f"ortholab {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    run = sub.add_parser("run", help="run a .ol script and print its report")
    run.add_argument("file")
    run.add_argument("--seed", type=int, default=DEFAULT_SEED)
    run.add_argument("--trials", type=int, default=None)
    run.add_argument("--format", choices=["json", "text"], default="json")
    run.add_argument("--timing", action="store_true", help="add elapsed-ms to each record (breaks byte-identity)")

    va = sub.add_parser("verify-all", help="run the acceptance suite")
    va.add_argument("--d", type=int, default=4, help="largest dimension")
    va.add_argument("--n", type=int, default=4, help="largest arity")
    va.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sub.add_parser("grammar", help="print the script grammar (EBNF)")
    return parser


def _run(args) -> int:
    try:
        with open(args.file, "rb") as fh:
            text = fh.read().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"ortholab: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.trials is not None and args.trials < 0:
        print("ortholab: --trials must be non-negative", file=sys.stderr)
        return EXIT_INVALID
    result = run_text(text, seed=args.seed, trials=args.trials, timing=args.timing)
    for line in result.diagnostics:
        print(f"{args.file}:{line}", file=sys.stderr)
    out = render_json(result.report) if args.format == "json" else render_text(result.report)
    sys.stdout.write(out)
    return result.exit_code


def _verify_all(args) -> int:
    from ortholab.acceptance import run_all

    results = run_all(d_max=args.d, n_max=args.n, seed=args.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "run":
            return _run(args)
        if args.cmd == "verify-all":
            return _verify_all(args)
        sys.stdout.write(GRAMMAR)
        return 0
    except OrthoLabError as exc:
        print(f"ortholab: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
