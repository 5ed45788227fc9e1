"""Harness CLI: ``mlharness run`` trains one configuration and writes the
result JSON; ``mlharness glyphs`` emits the synthetic benchmark dataset."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import DATASETS, VARIANTS, ExperimentConfig
from .errors import HarnessError
from .glyphs import generate
from .run import train_eval


def cmd_run(args) -> int:
    config = ExperimentConfig(
        dataset=args.dataset,
        variant=args.variant,
        data_dir=Path(args.data_dir),
        epochs=args.epochs,
        seed=args.seed,
        subsample=args.subsample,
    )
    result = train_eval(config)
    Path(args.out).write_text(json.dumps(result.to_dict(), indent=2) + "\n")
    print(
        f"{args.dataset}/{args.variant}: test_accuracy={result.test_accuracy:.4f} "
        f"({result.wall_time:.1f} s, results in {args.out})"
    )
    return 0


def cmd_glyphs(args) -> int:
    out = generate(args.out_dir, args.train, args.test, args.seed)
    print(f"wrote synthetic glyph IDX files to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlharness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="train the reference classifier on one variant")
    p.add_argument("--dataset", choices=DATASETS, required=True)
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--data-dir", required=True)
    p.add_argument("--epochs", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--subsample", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("glyphs", help="generate the synthetic 10-class glyph dataset")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--train", type=int, default=4000)
    p.add_argument("--test", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_glyphs)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HarnessError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
