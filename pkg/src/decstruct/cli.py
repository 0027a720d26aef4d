"""Command-line batch runner."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .batch import BatchError, parse_batch, render, run_batch
from .core import DomainError, SubstitutionScheme
from .reduction import DEFAULT_POLICY, ReductionPolicy


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="decstruct",
        description="Substitute gamble pairs into decision matrices, reduce them to a choice, and report.",
    )
    ap.add_argument("--batch", required=True, type=Path, help="JSON batch of gamble pairs")
    ap.add_argument("--scheme", type=Path, help="JSON substitution scheme (overrides one embedded in the batch)")
    ap.add_argument("--policy", type=Path, help="JSON reduction policy")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=("table", "csv", "json"), default="table")
    ap.add_argument("--max-tree-depth", type=int, default=4, help="safety cap on reduction tree depth")
    ap.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")
    return ap


def _load_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        batch = parse_batch(args.batch)
        scheme = SubstitutionScheme.from_dict(_load_json(args.scheme)) if args.scheme else None
        policy = ReductionPolicy.from_dict(_load_json(args.policy)) if args.policy else DEFAULT_POLICY
        reports = run_batch(batch, scheme, policy, args.seed, args.max_tree_depth)
    except BatchError as exc:
        for line in exc.lines():
            print(f"{args.batch}: {line}", file=sys.stderr)
        return 1
    except (DomainError, OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    text = render(reports, args.format)
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
