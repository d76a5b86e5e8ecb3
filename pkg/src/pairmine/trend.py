"""Effort co-movement trends across adjacent complexity scales.

For each pair of adjacent complexity ratings (VL,L) ... (VH,XH) the projects
rated at either end form a subset. Comparing them pairwise, oriented so the
complexity sign is "+", yields a distribution of ACTUAL-effort signs: does
effort rise, fall, or stay put as complexity steps up across that boundary?
A strict majority of "+" marks the pair increasing, of "-" decreasing, and
anything short of a majority is indeterminate. Scales where the trend flips
between adjacent pairs are turning points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .comparator import ComparisonTable, Sign, build_comparison_table
from .dataset import ACTUAL, DevMode, ProjectSet, Rating


class Trend(enum.Enum):
    """Direction of effort movement across one scale pair."""

    INCREASING = "increasing"
    DECREASING = "decreasing"
    INDETERMINATE = "indeterminate"

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.value


class TurningKind(enum.Enum):
    """How the trend behaves at an interior scale.

    reverse: increasing before, decreasing after.
    obverse: decreasing before, increasing after.
    bearing: the same defined trend on both sides.
    """

    REVERSE = "reverse"
    OBVERSE = "obverse"
    BEARING = "bearing"

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.value


@dataclass(frozen=True)
class ScalePair:
    """Two adjacent ratings on the complexity scale."""

    lower: Rating
    upper: Rating

    def __post_init__(self) -> None:
        if self.upper != self.lower + 1:
            raise ValueError(
                f"scale pair must be adjacent, got ({self.lower}, {self.upper})"
            )

    @property
    def label(self) -> str:
        return f"{self.lower.name}-{self.upper.name}"


#: The five consecutive scale pairs, in ascending order.
SCALE_PAIRS: tuple[ScalePair, ...] = tuple(
    ScalePair(Rating(i), Rating(i + 1)) for i in range(len(Rating) - 1)
)

#: Attribute whose scale defines the subsets and orients the comparisons.
TREND_PIVOT = "CPLX"


@dataclass(frozen=True)
class ScalePairAnalysis:
    """Sign distribution of ACTUAL effort over one scale-pair subset."""

    pair: ScalePair
    counts: Mapping[Sign, int]
    trend: Trend

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", dict(self.counts))

    @property
    def mass(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class TurningPoint:
    """A labeled interior scale between two defined adjacent trends."""

    scale: Rating
    kind: TurningKind
    before: Trend
    after: Trend


def scale_pair_subsets(
    projects: ProjectSet, mode: DevMode | None = None
) -> list[tuple[ScalePair, ProjectSet]]:
    """Project subsets rated at either end of each scale pair.

    A project rated at the shared scale of two adjacent pairs belongs to both
    subsets. With ``mode`` given, only that mode's projects participate.
    """
    pool = projects.filter_by_mode(mode) if mode is not None else projects
    subsets = []
    for pair in SCALE_PAIRS:
        members = tuple(
            p for p in pool if p.ratings[TREND_PIVOT] in (pair.lower, pair.upper)
        )
        subsets.append((pair, ProjectSet(members)))
    return subsets


def effort_change_distribution(
    subset: ProjectSet | Sequence, mode_aware: bool = False
) -> dict[Sign, int]:
    """Tally ACTUAL signs over the subset's oriented comparison table.

    The table is oriented on complexity and complexity ties are dropped, so
    every counted record compares a strictly more complex project against a
    strictly less complex one. The tally covers all three signs; its mass is
    the record count of the pruned table.
    """
    table = build_comparison_table(subset, mode_aware=mode_aware, pivot=TREND_PIVOT)
    counts = {Sign.PLUS: 0, Sign.MINUS: 0, Sign.ZERO: 0}
    for record in table.records:
        counts[record.signs[ACTUAL]] += 1
    return counts


def classify_trend(counts: Mapping[Sign, int]) -> Trend:
    """Strict-majority classification over the full three-sign mass.

    Ties and zero-heavy distributions are indeterminate; scaling all counts
    by a constant cannot change the outcome.
    """
    mass = sum(counts.values())
    plus = counts.get(Sign.PLUS, 0)
    minus = counts.get(Sign.MINUS, 0)
    if 2 * plus > mass:
        return Trend.INCREASING
    if 2 * minus > mass:
        return Trend.DECREASING
    return Trend.INDETERMINATE


def turning_points(trends: Sequence[Trend]) -> list[TurningPoint]:
    """Label interior scales where both neighboring trends are defined.

    With five scale-pair trends the interior scales are L, N, H, VH: scale i
    closes pair i-1 and opens pair i. Boundary scales (VL, XH) have only one
    side and are never labeled, nor is a scale next to an indeterminate pair.
    """
    if len(trends) != len(SCALE_PAIRS):
        raise ValueError(
            f"expected {len(SCALE_PAIRS)} trends, got {len(trends)}"
        )
    points = []
    for i in range(1, len(trends)):
        before, after = trends[i - 1], trends[i]
        if Trend.INDETERMINATE in (before, after):
            continue
        if before is Trend.INCREASING and after is Trend.DECREASING:
            kind = TurningKind.REVERSE
        elif before is Trend.DECREASING and after is Trend.INCREASING:
            kind = TurningKind.OBVERSE
        else:
            kind = TurningKind.BEARING
        points.append(
            TurningPoint(scale=Rating(i), kind=kind, before=before, after=after)
        )
    return points


@dataclass(frozen=True)
class TrendAnalysis:
    """Per-pair distributions, trend labels, and turning points for a scope."""

    entries: tuple[ScalePairAnalysis, ...]
    points: tuple[TurningPoint, ...]

    @property
    def trends(self) -> tuple[Trend, ...]:
        return tuple(entry.trend for entry in self.entries)

    def decreasing_intervals(self) -> list[tuple[Rating, Rating]]:
        """Maximal runs of decreasing pairs, as (low, high) scale spans."""
        intervals: list[tuple[Rating, Rating]] = []
        run_start: Rating | None = None
        for entry in self.entries:
            if entry.trend is Trend.DECREASING:
                if run_start is None:
                    run_start = entry.pair.lower
                run_end = entry.pair.upper
            else:
                if run_start is not None:
                    intervals.append((run_start, run_end))
                    run_start = None
        if run_start is not None:
            intervals.append((run_start, run_end))
        return intervals


def analyze_trends(
    projects: ProjectSet, mode: DevMode | None = None, mode_aware: bool | None = None
) -> TrendAnalysis:
    """Full trend analysis for one scope (all projects or a single mode).

    ``mode_aware`` controls whether cross-mode pairs count when ``mode`` is
    None; it defaults to mode-agnostic for the general scope and is forced
    within a single-mode scope anyway, since all pairs share the mode.
    """
    aware = bool(mode_aware) if mode is None else True
    entries = []
    for pair, subset in scale_pair_subsets(projects, mode):
        counts = effort_change_distribution(subset, mode_aware=aware)
        entries.append(
            ScalePairAnalysis(pair=pair, counts=counts, trend=classify_trend(counts))
        )
    points = turning_points([entry.trend for entry in entries])
    return TrendAnalysis(entries=tuple(entries), points=tuple(points))
