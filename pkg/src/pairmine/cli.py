"""Command-line interface around the analysis pipeline.

Exit codes: 0 success, 1 dataset error, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .comparator import Antecedent
from .data import load_bundled
from .dataset import DatasetError, parse_dataset
from .miner import MiningError
from .report import (
    Analysis,
    Engine,
    PipelineConfig,
    ReportFormat,
    RunReport,
    Scope,
    emit_report,
    run_pipeline,
)

EXIT_OK = 0
EXIT_DATASET = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"not a decimal or ratio: {text!r}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairmine",
        description=(
            "Compare projects pairwise into sign records, mine association "
            "rules under a fixed antecedent, and classify effort trends "
            "across complexity scales."
        ),
    )
    parser.add_argument(
        "--dataset",
        type=Path,
        default=None,
        help="project CSV (default: the bundled 63-project dataset)",
    )
    parser.add_argument(
        "--analysis",
        choices=[a.value for a in Analysis],
        default=Analysis.ALL.value,
        help="pipeline stage to report (default: all)",
    )
    parser.add_argument(
        "--scope",
        choices=[s.value for s in Scope],
        default=Scope.EACH.value,
        help="mode scope; 'each' runs general plus every mode (default: each)",
    )
    parser.add_argument(
        "--min-freq",
        type=_fraction,
        default=Fraction(1, 2),
        metavar="RATIO",
        help="exclusive frequency threshold, decimal or n/d (default: 0.5)",
    )
    parser.add_argument(
        "--min-acc",
        type=_fraction,
        default=Fraction(3, 4),
        metavar="RATIO",
        help="exclusive accuracy threshold, decimal or n/d (default: 0.75)",
    )
    parser.add_argument(
        "--antecedent",
        default="CPLX=+,ACTUAL=-",
        metavar="ITEMS",
        help="fixed rule left-hand side, e.g. CPLX=+,ACTUAL=- (the default); "
        "the first item is the orientation pivot",
    )
    parser.add_argument(
        "--max-consequent",
        type=int,
        default=15,
        metavar="N",
        help="largest consequent size to search (default: 15)",
    )
    parser.add_argument(
        "--engine",
        choices=[e.value for e in Engine],
        default=Engine.OPTIMIZED.value,
        help="exhaustive 'faithful' search or pruned 'optimized' search "
        "(default: optimized; both return identical rules)",
    )
    parser.add_argument(
        "--format",
        choices=[f.value for f in ReportFormat],
        default=ReportFormat.TEXT.value,
        help="report format (default: text)",
    )
    parser.add_argument(
        "--out",
        type=Path,
        default=None,
        help="output file (default: stdout)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        antecedent = Antecedent.parse(args.antecedent)
        config = PipelineConfig(
            dataset=args.dataset,
            analysis=Analysis(args.analysis),
            scope=Scope(args.scope),
            engine=Engine(args.engine),
            min_frequency=args.min_freq,
            min_accuracy=args.min_acc,
            antecedent=antecedent,
            max_consequent_size=args.max_consequent,
        )
        config.mining_config()  # validate thresholds and bounds up front
    except (ValueError, MiningError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.dataset is None:
            projects = load_bundled()
        else:
            with open(args.dataset, "r", encoding="utf-8", newline="") as handle:
                projects = parse_dataset(handle)
    except DatasetError as exc:
        print(f"dataset error: {exc}", file=sys.stderr)
        return EXIT_DATASET
    except OSError as exc:
        print(f"dataset error: {exc}", file=sys.stderr)
        return EXIT_DATASET

    report: RunReport = run_pipeline(config, projects)

    try:
        if args.out is None:
            emit_report(report, sys.stdout, ReportFormat(args.format))
        else:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                emit_report(report, handle, ReportFormat(args.format))
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return EXIT_IO

    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
