"""Command line entry point: ``wicklab verify | sweep | oracle``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import WickLabError
from .harness import FORMATS, RunConfig, run_sweep, run_verify
from .oracles import ORACLES


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wicklab",
                                     description="Wick-product identities and inequalities, checked numerically.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run every check with the pinned or given config")
    verify.add_argument("--config", type=Path, help="JSON config (default: the pinned verify config)")
    verify.add_argument("--out", type=Path, help="write the report here instead of stdout")
    verify.add_argument("--format", choices=FORMATS, help="report format (default from config)")
    verify.add_argument("--workers", type=int, help="process pool size")

    sweep = sub.add_parser("sweep", help="full-Hoelder and Lieb rows over an exponent grid")
    sweep.add_argument("--config", type=Path, required=True)
    sweep.add_argument("--out", type=Path, required=True)
    sweep.add_argument("--format", choices=FORMATS)
    sweep.add_argument("--workers", type=int)

    oracle = sub.add_parser("oracle", help="run one projection/quadrature oracle")
    oracle.add_argument("--case", required=True, choices=sorted(ORACLES))
    return parser


def _load(args, default: str) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig.pinned(default)
    changes = {"mode": default}
    if args.format:
        changes["format"] = args.format
    if args.workers:
        changes["workers"] = args.workers
    if args.out:
        changes["output"] = str(args.out)
    return cfg.replace(**changes)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "oracle":
        try:
            result = ORACLES[args.case]()
        except (WickLabError, ValueError, ArithmeticError) as exc:
            print(f"FAIL {args.case}: {exc}", file=sys.stderr)
            return 1
        print(result.render())
        return 0 if result.passed else 1
    try:
        cfg = _load(args, args.command)
        result = run_verify(cfg) if args.command == "verify" else run_sweep(cfg)
    except (WickLabError, OSError, ValueError) as exc:
        print(f"wicklab: {exc}", file=sys.stderr)
        return 2
    text = result.render()
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    failed = len(result.failures)
    print(f"{len(result.rows)} rows, {failed} failed, {result.wall_time:.1f} s", file=sys.stderr)
    for row in result.failures[:20]:
        print(f"FAIL {row.check} {row.exponents} {row.note}", file=sys.stderr)
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
