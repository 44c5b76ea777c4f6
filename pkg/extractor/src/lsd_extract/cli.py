"""Command-line wrapper around :func:`lsd_extract.extract.extract`."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .extract import ExampleParseError, ExtractionConfig, extract


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsd-extract",
        description="Dump pooled per-layer hidden states of a transformer "
        "encoder into an LSD1 file.",
    )
    parser.add_argument("--model", required=True, help="checkpoint path or identifier")
    parser.add_argument("--input", required=True, help="TSV: label TAB text [TAB text2]")
    parser.add_argument("--output", required=True, help="LSD1 destination path")
    parser.add_argument("--max-length", type=int, default=128)
    parser.add_argument("--pooling", choices=["cls", "mean"], default="cls")
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--name", help="dataset name tag (default: input stem)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    config = ExtractionConfig(
        model=args.model,
        input_path=args.input,
        output_path=args.output,
        max_length=args.max_length,
        pooling=args.pooling,
        batch_size=args.batch_size,
        dataset_name=args.name,
    )
    try:
        written = extract(config)
    except ExampleParseError as exc:
        print(f"lsd-extract: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"lsd-extract: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # checkpoint load and friends
        print(f"lsd-extract: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written} bytes to {args.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
