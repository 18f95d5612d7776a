"""Command-line interface: extract and describe.

Exit codes: 0 success, 1 data/model error, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import DEFAULT_BATCH_SIZE, DEFAULT_LAYER, DEFAULT_MAX_TOKENS, ExtractorConfig
from .errors import ExtractorError
from .extract import describe, extract


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgb-extract",
        description="Produce KGBE embedding files from corpus text with a multilingual encoder.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("extract", help="embed a corpus into a KGBE file")
    p_ext.add_argument("--corpus", required=True, type=Path, help="corpus JSONL file")
    p_ext.add_argument("--model", required=True, help="encoder name or local directory")
    p_ext.add_argument("--layer", type=_non_negative_int, default=DEFAULT_LAYER,
                       help=f"hidden-state index, 0 = embedding layer output (default: {DEFAULT_LAYER})")
    p_ext.add_argument("--max-tokens", type=_positive_int, default=DEFAULT_MAX_TOKENS,
                       help=f"truncation limit incl. special tokens (default: {DEFAULT_MAX_TOKENS})")
    p_ext.add_argument("--batch-size", type=_positive_int, default=DEFAULT_BATCH_SIZE,
                       help=f"sentences per inference batch (default: {DEFAULT_BATCH_SIZE})")
    p_ext.add_argument("--out", required=True, type=Path, help="output KGBE path")

    p_desc = sub.add_parser("describe", help="summarize a KGBE file and its manifest")
    p_desc.add_argument("--kgbe", required=True, type=Path, help="KGBE file")
    p_desc.add_argument("--manifest", type=Path, default=None,
                        help="manifest path (default: <kgbe>.manifest.json)")

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            config = ExtractorConfig(
                model_id=args.model,
                layer=args.layer,
                max_tokens=args.max_tokens,
                batch_size=args.batch_size,
            )
            result = extract(args.corpus, config, args.out)
            print(
                f"wrote {result.out_path} ({result.pair_count} pairs, dim {result.dim}) "
                f"and {result.manifest_path}"
            )
        else:
            sys.stdout.write(describe(args.kgbe, args.manifest))
    except ExtractorError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
