"""Pairwise qualitative comparison of projects.

Every unordered project pair becomes one record of signs, one sign per
attribute: "+" if the left project's value is higher, "-" if lower, "0" if
equal. Driver ratings compare by ordinal rank; LOC and ACTUAL compare
numerically. Records are then oriented on a pivot attribute (complexity by
default) so the pivot sign is never "-", and pairs tied on the pivot are
dropped because they carry no pivot direction at all.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from typing import IO, Iterator, Mapping, Sequence

from .dataset import ATTRIBUTES, DevMode, Project, ProjectSet


class Sign(enum.Enum):
    """Three-valued comparison outcome."""

    PLUS = "+"
    MINUS = "-"
    ZERO = "0"

    @classmethod
    def parse(cls, text: str) -> "Sign":
        try:
            return cls(text.strip())
        except ValueError:
            raise ValueError(f"unknown sign symbol: {text!r}") from None

    @property
    def negated(self) -> "Sign":
        if self is Sign.PLUS:
            return Sign.MINUS
        if self is Sign.MINUS:
            return Sign.PLUS
        return Sign.ZERO

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.value


#: Pivot attribute used to orient records unless a caller overrides it.
DEFAULT_PIVOT = "CPLX"


def sign_of(left, right) -> Sign:
    """Sign of ``left`` relative to ``right`` for comparable values."""
    if left > right:
        return Sign.PLUS
    if left < right:
        return Sign.MINUS
    return Sign.ZERO


@dataclass(frozen=True)
class ComparisonRecord:
    """Signs for one oriented project pair.

    ``mode`` is the shared development mode, or None when the two projects
    have different modes (possible only in mode-agnostic tables).
    """

    left_id: str
    right_id: str
    mode: DevMode | None
    signs: Mapping[str, Sign]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", dict(self.signs))

    @property
    def pair_label(self) -> str:
        return f"#{self.left_id}-#{self.right_id}"

    def swapped(self) -> "ComparisonRecord":
        """The same pair viewed from the other side: every sign negated."""
        return ComparisonRecord(
            left_id=self.right_id,
            right_id=self.left_id,
            mode=self.mode,
            signs={name: sign.negated for name, sign in self.signs.items()},
        )


def compare_projects(left: Project, right: Project) -> ComparisonRecord:
    """Compare two projects attribute by attribute.

    Antisymmetric by construction: swapping the arguments negates every sign,
    and comparing a project with itself yields all zeros.
    """
    signs = {name: sign_of(left.value(name), right.value(name)) for name in ATTRIBUTES}
    mode = left.mode if left.mode is right.mode else None
    return ComparisonRecord(
        left_id=left.id, right_id=right.id, mode=mode, signs=signs
    )


@dataclass(frozen=True)
class Antecedent:
    """Fixed left-hand side of every mined rule: (attribute, sign) items.

    The first item is the pivot; orientation forces its sign to "+", so an
    antecedent demanding a "-" pivot could never match an oriented table.
    """

    items: tuple[tuple[str, Sign], ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise ValueError("antecedent must contain at least one item")
        names = [name for name, _ in self.items]
        if len(set(names)) != len(names):
            raise ValueError(f"antecedent repeats attributes: {names}")
        for name, sign in self.items:
            if sign not in (Sign.PLUS, Sign.MINUS):
                raise ValueError(
                    f"antecedent sign for {name} must be '+' or '-', got {sign}"
                )
        if self.items[0][1] is not Sign.PLUS:
            raise ValueError("pivot item must require sign '+'")

    @property
    def pivot(self) -> str:
        return self.items[0][0]

    @property
    def attributes(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.items)

    @classmethod
    def parse(cls, text: str) -> "Antecedent":
        """Parse ``"CPLX=+,ACTUAL=-"`` style item lists."""
        items: list[tuple[str, Sign]] = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            name, eq, symbol = chunk.partition("=")
            if not eq:
                raise ValueError(f"antecedent item missing '=': {chunk!r}")
            items.append((name.strip().upper(), Sign.parse(symbol)))
        return cls(tuple(items))

    def __str__(self) -> str:
        return " & ".join(f"{name}={sign.value}" for name, sign in self.items)


#: Default mining antecedent: higher complexity with lower actual effort.
DEFAULT_ANTECEDENT = Antecedent((("CPLX", Sign.PLUS), ("ACTUAL", Sign.MINUS)))


@dataclass(frozen=True)
class ComparisonTable:
    """Oriented comparison records plus counts describing their construction.

    ``attributes`` is the sign universe each record covers; it defaults to the
    full dataset universe but tests may build reduced tables. ``pairs_generated``
    counts pairs before pivot-tie pruning and ``pivot_ties_pruned`` the pairs
    dropped for a "0" pivot sign; both survive antecedent filtering unchanged.
    """

    records: tuple[ComparisonRecord, ...]
    attributes: tuple[str, ...] = ATTRIBUTES
    pivot: str = DEFAULT_PIVOT
    mode_aware: bool = False
    pairs_generated: int = 0
    pivot_ties_pruned: int = 0
    antecedent_applied: Antecedent | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        if self.pivot not in self.attributes:
            raise ValueError(f"pivot {self.pivot!r} not in table attributes")
        for record in self.records:
            missing = [a for a in self.attributes if a not in record.signs]
            if missing:
                raise ValueError(
                    f"record {record.pair_label} lacks signs for {missing}"
                )

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ComparisonRecord]:
        return iter(self.records)


def build_comparison_table(
    projects: ProjectSet | Sequence[Project],
    mode_aware: bool = False,
    pivot: str = DEFAULT_PIVOT,
    attributes: Sequence[str] | None = None,
) -> ComparisonTable:
    """Compare every project pair once and orient the records on the pivot.

    Pairs are generated in input order (each unordered pair exactly once).
    A record whose pivot sign is "-" is swapped so the pivot reads "+"; a
    record whose pivot sign is "0" is dropped. With ``mode_aware`` set, pairs
    of differing mode are never generated at all.
    """
    universe = tuple(attributes) if attributes is not None else ATTRIBUTES
    if pivot not in universe:
        raise ValueError(f"pivot {pivot!r} not in attribute universe")
    items = list(projects)
    records: list[ComparisonRecord] = []
    generated = 0
    ties = 0
    for i, left in enumerate(items):
        for right in items[i + 1:]:
            if mode_aware and left.mode is not right.mode:
                continue
            generated += 1
            signs = {
                name: sign_of(left.value(name), right.value(name))
                for name in universe
            }
            pivot_sign = signs[pivot]
            if pivot_sign is Sign.ZERO:
                ties += 1
                continue
            mode = left.mode if left.mode is right.mode else None
            record = ComparisonRecord(
                left_id=left.id, right_id=right.id, mode=mode, signs=signs
            )
            if pivot_sign is Sign.MINUS:
                record = record.swapped()
            records.append(record)
    return ComparisonTable(
        records=tuple(records),
        attributes=universe,
        pivot=pivot,
        mode_aware=mode_aware,
        pairs_generated=generated,
        pivot_ties_pruned=ties,
    )


def apply_antecedent(
    table: ComparisonTable, antecedent: Antecedent = DEFAULT_ANTECEDENT
) -> ComparisonTable:
    """Keep only records matching every antecedent item.

    Idempotent: the surviving records already match, so applying the same
    antecedent again changes nothing.
    """
    for name, _ in antecedent.items:
        if name not in table.attributes:
            raise ValueError(f"antecedent references unknown attribute: {name!r}")
    if antecedent.pivot != table.pivot:
        raise ValueError(
            f"antecedent pivot {antecedent.pivot!r} does not match "
            f"table pivot {table.pivot!r}"
        )
    kept = tuple(
        record
        for record in table.records
        if all(record.signs[name] is sign for name, sign in antecedent.items)
    )
    return ComparisonTable(
        records=kept,
        attributes=table.attributes,
        pivot=table.pivot,
        mode_aware=table.mode_aware,
        pairs_generated=table.pairs_generated,
        pivot_ties_pruned=table.pivot_ties_pruned,
        antecedent_applied=antecedent,
    )


#: Export header for comparison tables.
TABLE_COLUMNS: tuple[str, ...] = ("ID", "COMPARISON", "DEV_MODE")


def write_table_csv(table: ComparisonTable, destination: IO[str]) -> None:
    """Write the table as CSV: row number, pair label, mode, then signs."""
    writer = csv.writer(destination, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS + table.attributes)
    for index, record in enumerate(table.records, start=1):
        mode = record.mode.value if record.mode is not None else ""
        writer.writerow(
            [index, record.pair_label, mode]
            + [record.signs[name].value for name in table.attributes]
        )
