"""End-to-end pipeline: load, transform, mine, analyze trends, emit.

The pipeline is pure given its inputs and emits byte-identical reports for
identical configurations; nothing here writes timestamps or machine state.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO

from .comparator import (
    DEFAULT_ANTECEDENT,
    Antecedent,
    ComparisonTable,
    Sign,
    apply_antecedent,
    build_comparison_table,
    write_table_csv,
)
from .dataset import DevMode, ProjectSet
from .miner import AssociationRule, MiningConfig, mine_rules, mine_rules_optimized
from .trend import TrendAnalysis, analyze_trends


class Analysis(enum.Enum):
    TRANSFORM = "transform"
    MINE = "mine"
    TREND = "trend"
    ALL = "all"


class Scope(enum.Enum):
    GENERAL = "general"
    ORGANIC = "organic"
    SEMIDETACHED = "semidetached"
    EMBEDDED = "embedded"
    EACH = "each"


class Engine(enum.Enum):
    FAITHFUL = "faithful"
    OPTIMIZED = "optimized"


class ReportFormat(enum.Enum):
    CSV = "csv"
    TEXT = "text"


#: More rules than this in one scope suggests the configuration has drifted
#: from the reference thresholds, so the report flags it.
RULE_DIVERGENCE_LIMIT = 20

#: Exported rule columns, in order.
RULE_COLUMNS: tuple[str, ...] = (
    "antecedent", "consequent", "appearance", "applied", "total",
    "frequency_pct", "accuracy_pct",
)

#: Exported trend columns, in order.
TREND_COLUMNS: tuple[str, ...] = ("pair", "plus", "minus", "zero", "trend")

TURNING_COLUMNS: tuple[str, ...] = ("scale", "kind", "before", "after")


@dataclass(frozen=True)
class PipelineConfig:
    """One run's worth of choices; defaults reproduce the reference results."""

    dataset: Path | None = None
    analysis: Analysis = Analysis.ALL
    scope: Scope = Scope.EACH
    engine: Engine = Engine.OPTIMIZED
    min_frequency: Fraction = Fraction(1, 2)
    min_accuracy: Fraction = Fraction(3, 4)
    antecedent: Antecedent = DEFAULT_ANTECEDENT
    max_consequent_size: int = 15

    def mining_config(self) -> MiningConfig:
        return MiningConfig(
            min_frequency=self.min_frequency,
            min_accuracy=self.min_accuracy,
            max_consequent_size=self.max_consequent_size,
            antecedent=self.antecedent,
        )


@dataclass(frozen=True)
class ScopeReport:
    """Everything computed for one scope."""

    name: str
    mode: DevMode | None
    projects: int
    pairs_generated: int
    pivot_ties_pruned: int
    oriented_records: int
    antecedent_records: int
    rules: tuple[AssociationRule, ...] | None
    trend: TrendAnalysis | None
    table: ComparisonTable | None
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class RunReport:
    """A full pipeline run: configuration echo plus per-scope results."""

    config: PipelineConfig
    scopes: tuple[ScopeReport, ...]

    @property
    def warnings(self) -> tuple[str, ...]:
        return tuple(w for scope in self.scopes for w in scope.warnings)


def _scope_modes(scope: Scope) -> list[tuple[str, DevMode | None]]:
    order = [
        (Scope.GENERAL, None),
        (Scope.ORGANIC, DevMode.ORGANIC),
        (Scope.SEMIDETACHED, DevMode.SEMIDETACHED),
        (Scope.EMBEDDED, DevMode.EMBEDDED),
    ]
    if scope is Scope.EACH:
        return [(s.value, mode) for s, mode in order]
    for s, mode in order:
        if s is scope:
            return [(s.value, mode)]
    raise ValueError(f"unknown scope: {scope}")  # pragma: no cover


def run_pipeline(config: PipelineConfig, projects: ProjectSet) -> RunReport:
    """Run the selected stages over each selected scope."""
    mining = config.mining_config()
    miner = mine_rules if config.engine is Engine.FAITHFUL else mine_rules_optimized
    want_rules = config.analysis in (Analysis.MINE, Analysis.ALL)
    want_trend = config.analysis in (Analysis.TREND, Analysis.ALL)
    keep_table = config.analysis is Analysis.TRANSFORM

    scope_reports = []
    for name, mode in _scope_modes(config.scope):
        pool = projects if mode is None else projects.filter_by_mode(mode)
        warnings_: list[str] = []
        table = build_comparison_table(
            pool, mode_aware=(mode is not None), pivot=config.antecedent.pivot
        )
        filtered = apply_antecedent(table, config.antecedent)
        rules: tuple[AssociationRule, ...] | None = None
        if want_rules:
            if len(filtered) == 0:
                warnings_.append("empty antecedent table: no rules to mine")
                rules = ()
            else:
                rules = tuple(miner(filtered, mining))
            if len(rules) > RULE_DIVERGENCE_LIMIT:
                warnings_.append(
                    f"{len(rules)} rules exceed the divergence limit "
                    f"({RULE_DIVERGENCE_LIMIT}); results likely diverge from "
                    f"the reference configuration"
                )
        trend = analyze_trends(projects, mode) if want_trend else None
        scope_reports.append(
            ScopeReport(
                name=name,
                mode=mode,
                projects=len(pool),
                pairs_generated=table.pairs_generated,
                pivot_ties_pruned=table.pivot_ties_pruned,
                oriented_records=len(table),
                antecedent_records=len(filtered),
                rules=rules,
                trend=trend,
                table=table if keep_table else None,
                warnings=tuple(warnings_),
            )
        )
    return RunReport(config=config, scopes=tuple(scope_reports))


def format_pct(value: Fraction | float) -> str:
    """Percentage with two decimals, e.g. 90.82."""
    return f"{float(value) * 100:.2f}"


def _rule_row(rule: AssociationRule) -> list[str]:
    return [
        str(rule.antecedent),
        str(rule.consequent),
        str(rule.appearance),
        str(rule.applied),
        str(rule.total),
        format_pct(rule.frequency),
        format_pct(rule.accuracy),
    ]


def _emit_csv(report: RunReport, out: IO[str]) -> None:
    config = report.config
    writer = csv.writer(out, lineterminator="\n")
    out.write(f"# analysis={config.analysis.value} scope={config.scope.value} "
              f"engine={config.engine.value}\n")
    out.write(f"# antecedent={config.antecedent} "
              f"min_frequency={config.min_frequency} "
              f"min_accuracy={config.min_accuracy} "
              f"max_consequent={config.max_consequent_size}\n")
    for scope in report.scopes:
        out.write("\n")
        out.write(f"# scope={scope.name} projects={scope.projects} "
                  f"pairs={scope.pairs_generated} "
                  f"pivot_ties={scope.pivot_ties_pruned} "
                  f"records={scope.oriented_records} "
                  f"antecedent_records={scope.antecedent_records}\n")
        for warning in scope.warnings:
            out.write(f"# warning: {warning}\n")
        if scope.table is not None:
            write_table_csv(scope.table, out)
        if scope.rules is not None:
            writer.writerow(RULE_COLUMNS)
            for rule in scope.rules:
                writer.writerow(_rule_row(rule))
        if scope.trend is not None:
            writer.writerow(TREND_COLUMNS)
            for entry in scope.trend.entries:
                writer.writerow(
                    [
                        entry.pair.label,
                        entry.counts[Sign.PLUS],
                        entry.counts[Sign.MINUS],
                        entry.counts[Sign.ZERO],
                        entry.trend.value,
                    ]
                )
            writer.writerow(TURNING_COLUMNS)
            for point in scope.trend.points:
                writer.writerow(
                    [
                        point.scale.name,
                        point.kind.value,
                        point.before.value,
                        point.after.value,
                    ]
                )


def _emit_text(report: RunReport, out: IO[str]) -> None:
    config = report.config
    out.write("pairwise comparison mining report\n")
    out.write(
        f"analysis: {config.analysis.value} | scope: {config.scope.value} | "
        f"engine: {config.engine.value}\n"
    )
    out.write(
        f"antecedent: {config.antecedent} | min frequency: "
        f"{config.min_frequency} | min accuracy: {config.min_accuracy} | "
        f"max consequent: {config.max_consequent_size}\n"
    )
    for scope in report.scopes:
        out.write(f"\nscope: {scope.name}\n")
        out.write(
            f"  projects: {scope.projects} | pairs: {scope.pairs_generated} | "
            f"pivot ties dropped: {scope.pivot_ties_pruned} | "
            f"oriented records: {scope.oriented_records} | "
            f"antecedent records: {scope.antecedent_records}\n"
        )
        for warning in scope.warnings:
            out.write(f"  warning: {warning}\n")
        if scope.table is not None:
            buffer = io.StringIO()
            write_table_csv(scope.table, buffer)
            for line in buffer.getvalue().splitlines():
                out.write(f"  {line}\n")
        if scope.rules is not None:
            out.write(f"  rules ({len(scope.rules)}):\n")
            if scope.rules:
                width = max(len(str(r.consequent)) for r in scope.rules)
                for rule in scope.rules:
                    out.write(
                        f"    {str(rule.consequent).ljust(width)}  "
                        f"appearance={rule.appearance}  applied={rule.applied}  "
                        f"total={rule.total}  "
                        f"frequency={format_pct(rule.frequency)}%  "
                        f"accuracy={format_pct(rule.accuracy)}%\n"
                    )
        if scope.trend is not None:
            out.write("  trend:\n")
            for entry in scope.trend.entries:
                out.write(
                    f"    {entry.pair.label}  plus={entry.counts[Sign.PLUS]}  "
                    f"minus={entry.counts[Sign.MINUS]}  "
                    f"zero={entry.counts[Sign.ZERO]}  {entry.trend.value}\n"
                )
            if scope.trend.points:
                parts = [
                    f"{p.scale.name} {p.kind.value} "
                    f"({p.before.value}->{p.after.value})"
                    for p in scope.trend.points
                ]
                out.write(f"    turning points: {'; '.join(parts)}\n")
            else:
                out.write("    turning points: none\n")
            intervals = scope.trend.decreasing_intervals()
            if intervals:
                spans = ", ".join(f"[{lo.name},{hi.name}]" for lo, hi in intervals)
                out.write(f"    decreasing intervals: {spans}\n")


def emit_report(
    report: RunReport, destination: IO[str], format: ReportFormat = ReportFormat.TEXT
) -> None:
    """Write the report; identical inputs produce identical bytes."""
    if format is ReportFormat.CSV:
        _emit_csv(report, destination)
    else:
        _emit_text(report, destination)
