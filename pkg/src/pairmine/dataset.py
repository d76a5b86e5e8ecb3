"""Project records: ordinal effort-driver ratings plus size and actual effort.

The dataset model is deliberately rigid: fifteen named drivers on a shared
six-point ordinal scale, one development mode, and two positive numeric
columns. Everything downstream (comparison, mining, trends) assumes exactly
this shape, so parsing rejects rather than repairs malformed input.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import IO, Iterable, Iterator, Mapping


class DatasetError(ValueError):
    """A dataset file or record violates the required shape."""


class Rating(enum.IntEnum):
    """Six-point ordinal rating for an effort driver, very low to extra high.

    Integer values encode rank, so ``Rating.L < Rating.H`` holds and rank
    differences never consult the driver's numeric cost multiplier.
    """

    VL = 0
    L = 1
    N = 2
    H = 3
    VH = 4
    XH = 5

    @classmethod
    def parse(cls, text: str) -> "Rating":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise DatasetError(f"unknown rating symbol: {text!r}") from None

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.name


class DevMode(enum.Enum):
    """Development mode of a project."""

    ORGANIC = "organic"
    SEMIDETACHED = "semidetached"
    EMBEDDED = "embedded"

    @classmethod
    def parse(cls, text: str) -> "DevMode":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise DatasetError(f"unknown development mode: {text!r}") from None

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.value


#: Ordinal effort drivers, in dataset column order. This order is canonical:
#: comparison records, mined consequents, and exports all follow it.
DRIVERS: tuple[str, ...] = (
    "RELY", "DATA", "CPLX", "TIME", "STOR", "VIRT", "TURN",
    "ACAP", "AEXP", "PCAP", "VEXP", "LEXP", "MODP", "TOOL", "SCED",
)

LOC = "LOC"
ACTUAL = "ACTUAL"

#: Full attribute universe: drivers first, then the two numeric columns.
ATTRIBUTES: tuple[str, ...] = DRIVERS + (LOC, ACTUAL)

#: Required CSV header, in order.
DATASET_COLUMNS: tuple[str, ...] = ("ID", "DEV_MODE") + ATTRIBUTES


@dataclass(frozen=True)
class Project:
    """One project: identifier, mode, driver ratings, size, actual effort."""

    id: str
    mode: DevMode
    ratings: Mapping[str, Rating]
    loc: float
    actual: float

    def __post_init__(self) -> None:
        if not self.id:
            raise DatasetError("project id must be non-empty")
        if not isinstance(self.mode, DevMode):
            raise DatasetError(f"project {self.id}: mode must be a DevMode")
        missing = [d for d in DRIVERS if d not in self.ratings]
        if missing:
            raise DatasetError(f"project {self.id}: missing ratings {missing}")
        extra = [k for k in self.ratings if k not in DRIVERS]
        if extra:
            raise DatasetError(f"project {self.id}: unknown drivers {extra}")
        for name, value in self.ratings.items():
            if not isinstance(value, Rating):
                raise DatasetError(
                    f"project {self.id}: rating for {name} must be a Rating"
                )
        if not self.loc > 0:
            raise DatasetError(f"project {self.id}: LOC must be positive")
        if not self.actual > 0:
            raise DatasetError(f"project {self.id}: ACTUAL must be positive")
        object.__setattr__(self, "ratings", MappingProxyType(dict(self.ratings)))

    def value(self, attribute: str):
        """Comparable value of an attribute: rating rank or numeric column."""
        if attribute == LOC:
            return self.loc
        if attribute == ACTUAL:
            return self.actual
        try:
            return self.ratings[attribute]
        except KeyError:
            raise KeyError(f"unknown attribute: {attribute!r}") from None


@dataclass(frozen=True)
class ProjectSet:
    """An ordered collection of projects with unique identifiers."""

    projects: tuple[Project, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "projects", tuple(self.projects))
        seen: set[str] = set()
        for p in self.projects:
            if p.id in seen:
                raise DatasetError(f"duplicate project id: {p.id!r}")
            seen.add(p.id)

    def __len__(self) -> int:
        return len(self.projects)

    def __iter__(self) -> Iterator[Project]:
        return iter(self.projects)

    def __getitem__(self, index: int) -> Project:
        return self.projects[index]

    def filter_by_mode(self, mode: DevMode) -> "ProjectSet":
        """Subset with the given mode, preserving input order."""
        return ProjectSet(tuple(p for p in self.projects if p.mode is mode))

    def mode_counts(self) -> dict[DevMode, int]:
        counts = {mode: 0 for mode in DevMode}
        for p in self.projects:
            counts[p.mode] += 1
        return counts


def _parse_positive_float(text: str, column: str, row_id: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DatasetError(
            f"project {row_id}: {column} is not a decimal number: {text!r}"
        ) from None
    if not value > 0:
        raise DatasetError(f"project {row_id}: {column} must be positive")
    return value


def parse_dataset(source: IO[str] | Iterable[str]) -> ProjectSet:
    """Read a project dataset from a stream of CSV text.

    The header must match ``DATASET_COLUMNS`` exactly, in order. Raises
    DatasetError for a wrong header, unknown symbols, duplicate ids,
    non-positive numeric fields, or an empty body.
    """
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError("empty input: no header row") from None
    header = [h.strip() for h in header]
    if header != list(DATASET_COLUMNS):
        missing = [c for c in DATASET_COLUMNS if c not in header]
        duplicated = sorted({c for c in header if header.count(c) > 1})
        unexpected = [c for c in header if c not in DATASET_COLUMNS]
        detail = []
        if missing:
            detail.append(f"missing columns {missing}")
        if duplicated:
            detail.append(f"duplicate columns {duplicated}")
        if unexpected:
            detail.append(f"unexpected columns {unexpected}")
        if not detail:
            detail.append("columns out of order")
        raise DatasetError("bad header: " + "; ".join(detail))

    projects: list[Project] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(DATASET_COLUMNS):
            raise DatasetError(
                f"line {lineno}: expected {len(DATASET_COLUMNS)} fields, "
                f"got {len(row)}"
            )
        row = [cell.strip() for cell in row]
        try:
            row_id = int(row[0])
        except ValueError:
            raise DatasetError(
                f"line {lineno}: ID must be an integer, got {row[0]!r}"
            ) from None
        mode = DevMode.parse(row[1])
        ratings = {
            driver: Rating.parse(cell)
            for driver, cell in zip(DRIVERS, row[2:2 + len(DRIVERS)])
        }
        loc = _parse_positive_float(row[-2], LOC, row_id)
        actual = _parse_positive_float(row[-1], ACTUAL, row_id)
        projects.append(
            Project(id=row_id, mode=mode, ratings=ratings, loc=loc, actual=actual)
        )
    if not projects:
        raise DatasetError("no projects: dataset body is empty")
    return ProjectSet(tuple(projects))


def _format_decimal(value: float) -> str:
    # Integral sizes read better without a trailing ".0".
    if value == int(value):
        return str(int(value))
    return repr(value)


def serialize_dataset(projects: ProjectSet, destination: IO[str]) -> None:
    """Write projects back out in canonical CSV form.

    Symbols are upper-cased ratings and lower-cased modes; numeric fields use
    the shortest decimal form. Parsing the output recovers identical values.
    """
    writer = csv.writer(destination, lineterminator="\n")
    writer.writerow(DATASET_COLUMNS)
    for p in projects:
        writer.writerow(
            [p.id, p.mode.value]
            + [p.ratings[d].name for d in DRIVERS]
            + [_format_decimal(p.loc), _format_decimal(p.actual)]
        )
