"""Command-line front end.

Subcommands: ``compute`` (per-layer measure table), ``recommend`` (sweep
plus argmax truncation choice), ``correlate`` (Pearson coefficient against
an accuracy curve), ``sample`` (deterministic dev-set subsampling into a
new dump). Data goes to stdout or --output; diagnostics go to stderr.

Exit codes: 0 success, 2 usage error, 3 input format error, 4 degenerate
data.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .analysis import (
    CorrelationReport,
    correlate,
    read_accuracy_curve,
    recommend,
    subsample_stack,
    sweep_all,
)
from .dumpio import read_dump, write_dump, write_report
from .errors import (
    ConstantSeriesError,
    CurveFormatError,
    DegenerateDataError,
    DimensionMismatchError,
    DumpFormatError,
    EmptyClassAfterSamplingError,
    EmptyClassError,
    InvalidFractionError,
    InvalidLabelError,
    LayerMismatchError,
    NonFiniteValueError,
    SentinelPresentError,
    TooFewPointsError,
)
from .measures import Measure

_FORMAT_ERRORS = (
    DumpFormatError,
    CurveFormatError,
    InvalidLabelError,
    NonFiniteValueError,
    DimensionMismatchError,
    TooFewPointsError,
    LayerMismatchError,
)
_DEGENERATE_ERRORS = (
    DegenerateDataError,
    EmptyClassError,
    ConstantSeriesError,
    SentinelPresentError,
    EmptyClassAfterSamplingError,
)


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from exc
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"fraction {value} outside (0, 1]")
    return value


def _measures(choice: str) -> list[Measure]:
    if choice == "all":
        return [Measure.CSM, Measure.SI, Measure.HM]
    return [Measure(choice)]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layersep",
        description="Layer-separability analysis and truncation advice "
        "for binary-classification layer dumps.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, measures=True, all_ok=True):
        p.add_argument("--input", required=True, help="LSD1 dump path")
        p.add_argument("--output", help="output path (default: stdout)")
        if measures:
            choices = ["csm", "si", "hm"] + (["all"] if all_ok else [])
            p.add_argument("--measure", choices=choices, default="csm")
            p.add_argument(
                "--format", choices=["json", "csv"], default="json"
            )
            p.add_argument(
                "--threads",
                type=int,
                default=0,
                metavar="N",
                help="worker threads, 0 = auto (result identical either way)",
            )

    p = sub.add_parser("compute", help="per-layer separability table")
    common(p)

    p = sub.add_parser("recommend", help="sweep and pick the truncation layer")
    common(p, all_ok=False)

    p = sub.add_parser("correlate", help="Pearson coefficient vs accuracy curve")
    common(p)
    p.add_argument("--acc", required=True, help="accuracy CSV (layer,accuracy)")
    p.add_argument(
        "--acc-units",
        choices=["percent", "fraction"],
        required=True,
        help="units of the accuracy column",
    )

    p = sub.add_parser("sample", help="subsample a dump into a new dump")
    common(p, measures=False)
    p.add_argument("--fraction", type=_fraction, required=True)
    p.add_argument("--seed", type=int, default=42)

    return parser


def _read_stack(path: str):
    with open(path, "rb") as fh:
        return read_dump(fh)


def _emit_text(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args: argparse.Namespace) -> None:
    if args.subcommand == "sample":
        stack = _read_stack(args.input)
        sampled = subsample_stack(stack, args.fraction, args.seed)
        if args.output:
            with open(args.output, "wb") as fh:
                write_dump(sampled, fh)
        else:
            write_dump(sampled, sys.stdout.buffer)
        return

    measures = _measures(args.measure)
    stack = _read_stack(args.input)

    if args.subcommand == "compute":
        reports = sweep_all(stack, measures, threads=args.threads)
        obj = reports[measures[0]] if len(measures) == 1 else [
            reports[m] for m in measures
        ]
        _emit_text(write_report(obj, args.format), args.output)
    elif args.subcommand == "recommend":
        report = sweep_all(stack, measures, threads=args.threads)[measures[0]]
        _emit_text(
            write_report(report, args.format, recommendation=recommend(report)),
            args.output,
        )
    elif args.subcommand == "correlate":
        with open(args.acc, "r", encoding="utf-8") as fh:
            curve = read_accuracy_curve(fh.read(), args.acc_units)
        reports = sweep_all(stack, measures, threads=args.threads)
        entries = tuple((m, correlate(reports[m], curve)) for m in measures)
        result = CorrelationReport(stack.dataset_name, args.acc_units, entries)
        _emit_text(write_report(result, args.format), args.output)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _run(args)
    except _FORMAT_ERRORS as exc:
        print(f"layersep: {exc}", file=sys.stderr)
        return 3
    except _DEGENERATE_ERRORS as exc:
        print(f"layersep: {exc}", file=sys.stderr)
        return 4
    except InvalidFractionError as exc:
        print(f"layersep: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"layersep: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
