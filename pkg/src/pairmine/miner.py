"""Association rule mining over sign-valued comparison tables.

The antecedent is fixed up front (by default: higher complexity, lower actual
effort), so mining reduces to searching consequents: sign assignments over
subsets of the remaining attributes. A candidate is scored on the
antecedent-filtered table three ways:

* total      - all records in the filtered table
* applied    - records with no "0" among the candidate's attributes
* appearance - records matching every (attribute, sign) item exactly

frequency = appearance / total and accuracy = appearance / applied, and a rule
is emitted only when both STRICTLY exceed their thresholds. One count feeds
both ratios: a record that matches the items can contain no zeros among them,
so the numerators coincide by construction.

``mine_rules`` evaluates every candidate. ``mine_rules_optimized`` returns the
same rules but skips supersets of candidates that already fail the frequency
threshold, which is sound because appearance can only shrink as items are
added. ``brute_force_oracle`` is a deliberately naive third path for
differential testing; it shares no code with the other two.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from .comparator import (
    DEFAULT_ANTECEDENT,
    Antecedent,
    ComparisonTable,
    Sign,
)
from .dataset import Project


class MiningError(ValueError):
    """A mining request that cannot be evaluated."""


class MiningWarning(UserWarning):
    """Non-fatal mining condition, such as an empty antecedent table."""


@dataclass(frozen=True)
class Consequent:
    """Right-hand side of a rule: one sign per chosen attribute."""

    items: tuple[tuple[str, Sign], ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise ValueError("consequent must contain at least one item")
        names = [name for name, _ in self.items]
        if len(set(names)) != len(names):
            raise ValueError(f"consequent repeats attributes: {names}")
        for name, sign in self.items:
            if sign not in (Sign.PLUS, Sign.MINUS):
                raise ValueError(
                    f"consequent sign for {name} must be '+' or '-', got {sign}"
                )

    @property
    def attributes(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __str__(self) -> str:
        return " & ".join(f"{name}={sign.value}" for name, sign in self.items)


class CandidateEvaluation(NamedTuple):
    appearance: int
    applied: int
    total: int
    frequency: Fraction
    accuracy: Fraction


@dataclass(frozen=True)
class AssociationRule:
    """A consequent that cleared both thresholds, with its counts."""

    antecedent: Antecedent
    consequent: Consequent
    appearance: int
    applied: int
    total: int

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.appearance, self.total)

    @property
    def accuracy(self) -> Fraction:
        if self.applied == 0:
            return Fraction(0)
        return Fraction(self.appearance, self.applied)


@dataclass(frozen=True)
class MiningConfig:
    """Thresholds and search bounds.

    Thresholds are exclusive: a candidate sitting exactly on one fails.
    They are converted to exact fractions once so threshold checks are
    integer arithmetic, never float comparisons.
    """

    min_frequency: float | Fraction = Fraction(1, 2)
    min_accuracy: float | Fraction = Fraction(3, 4)
    max_consequent_size: int = 15
    antecedent: Antecedent = DEFAULT_ANTECEDENT

    def __post_init__(self) -> None:
        freq = Fraction(self.min_frequency)
        acc = Fraction(self.min_accuracy)
        if not 0 <= freq < 1:
            raise MiningError(f"min_frequency out of range [0, 1): {freq}")
        if not 0 <= acc < 1:
            raise MiningError(f"min_accuracy out of range [0, 1): {acc}")
        if self.max_consequent_size < 1:
            raise MiningError("max_consequent_size must be at least 1")
        object.__setattr__(self, "min_frequency", freq)
        object.__setattr__(self, "min_accuracy", acc)


def candidate_attributes(
    table: ComparisonTable, antecedent: Antecedent | None = None
) -> tuple[str, ...]:
    """Attributes eligible for consequents: the universe minus the antecedent.

    Defaults to the antecedent already applied to the table.
    """
    if antecedent is None:
        antecedent = table.antecedent_applied
        if antecedent is None:
            raise MiningError("table has no applied antecedent")
    excluded = set(antecedent.attributes)
    return tuple(name for name in table.attributes if name not in excluded)


def prune_for_consequent(
    table: ComparisonTable, attributes: Sequence[str]
) -> ComparisonTable:
    """Drop records with a "0" sign at any of the given attributes.

    The survivors are the records to which a consequent over ``attributes``
    can apply at all.
    """
    for name in attributes:
        if name not in table.attributes:
            raise MiningError(f"unknown attribute: {name!r}")
    kept = tuple(
        record
        for record in table.records
        if all(record.signs[name] is not Sign.ZERO for name in attributes)
    )
    return ComparisonTable(
        records=kept,
        attributes=table.attributes,
        pivot=table.pivot,
        mode_aware=table.mode_aware,
        pairs_generated=table.pairs_generated,
        pivot_ties_pruned=table.pivot_ties_pruned,
        antecedent_applied=table.antecedent_applied,
    )


def evaluate_candidate(
    consequent: Consequent, table: ComparisonTable
) -> CandidateEvaluation:
    """Score one candidate on an antecedent-filtered table by direct scan."""
    total = len(table.records)
    if total == 0:
        raise MiningError("empty antecedent table")
    applied = 0
    appearance = 0
    for record in table.records:
        signs = record.signs
        if any(signs[name] is Sign.ZERO for name, _ in consequent.items):
            continue
        applied += 1
        if all(signs[name] is sign for name, sign in consequent.items):
            appearance += 1
    frequency = Fraction(appearance, total)
    accuracy = Fraction(appearance, applied) if applied else Fraction(0)
    return CandidateEvaluation(appearance, applied, total, frequency, accuracy)


def _rule_sort_key(candidates: Sequence[str]):
    """Canonical rule order: size, then column order, then "+" before "-"."""
    position = {name: index for index, name in enumerate(candidates)}

    def key(rule: AssociationRule):
        attrs = tuple(position[name] for name, _ in rule.consequent.items)
        signs = tuple(0 if sign is Sign.PLUS else 1 for _, sign in rule.consequent.items)
        return (len(rule.consequent), attrs, signs)

    return key


def _attribute_masks(table: ComparisonTable, names: Sequence[str]):
    """Per-attribute record bitmasks: rows signed "+", "-", and non-"0"."""
    plus: list[int] = []
    minus: list[int] = []
    nonzero: list[int] = []
    for name in names:
        p = m = 0
        for index, record in enumerate(table.records):
            sign = record.signs[name]
            if sign is Sign.PLUS:
                p |= 1 << index
            elif sign is Sign.MINUS:
                m |= 1 << index
        plus.append(p)
        minus.append(m)
        nonzero.append(p | m)
    return plus, minus, nonzero


def _check_table(table: ComparisonTable, config: MiningConfig) -> bool:
    if table.antecedent_applied != config.antecedent:
        raise MiningError(
            "table antecedent does not match the mining configuration; "
            "apply the configured antecedent first"
        )
    if len(table.records) == 0:
        warnings.warn("empty antecedent table: no rules to mine", MiningWarning)
        return False
    return True


def mine_rules(
    table: ComparisonTable, config: MiningConfig = MiningConfig()
) -> list[AssociationRule]:
    """Evaluate every consequent candidate and keep those passing both tests.

    Exhaustive by design: all sign assignments over all attribute subsets up
    to the size bound are scored, with no pruning. Candidates are generated
    size-ascending, subsets in column order, "+" before "-" within an
    attribute, so the output is already canonically ordered.
    """
    if not _check_table(table, config):
        return []
    candidates = candidate_attributes(table, config.antecedent)
    plus, minus, nonzero = _attribute_masks(table, candidates)
    total = len(table.records)
    freq = Fraction(config.min_frequency)
    acc = Fraction(config.min_accuracy)
    # appearance / total > freq  <=>  appearance * fd > fn * total, etc.
    fn, fd = freq.numerator, freq.denominator
    an, ad = acc.numerator, acc.denominator
    freq_bound = fn * total
    max_size = min(config.max_consequent_size, len(candidates))
    rules: list[AssociationRule] = []
    for size in range(1, max_size + 1):
        for idxs in combinations(range(len(candidates)), size):
            applied_mask = nonzero[idxs[0]]
            for i in idxs[1:]:
                applied_mask &= nonzero[i]
            applied = applied_mask.bit_count()
            # Expand all 2^size sign assignments, sharing prefix masks.
            assignments: list[tuple[tuple[Sign, ...], int]] = [((), (1 << total) - 1)]
            for i in idxs:
                assignments = [
                    (signs + (sign,), mask & chosen)
                    for signs, mask in assignments
                    for sign, chosen in ((Sign.PLUS, plus[i]), (Sign.MINUS, minus[i]))
                ]
            for signs, mask in assignments:
                appearance = mask.bit_count()
                if appearance * fd > freq_bound and appearance * ad > an * applied:
                    consequent = Consequent(
                        tuple((candidates[i], sign) for i, sign in zip(idxs, signs))
                    )
                    rules.append(
                        AssociationRule(
                            antecedent=config.antecedent,
                            consequent=consequent,
                            appearance=appearance,
                            applied=applied,
                            total=total,
                        )
                    )
    rules.sort(key=_rule_sort_key(candidates))
    return rules


def mine_rules_optimized(
    table: ComparisonTable, config: MiningConfig = MiningConfig()
) -> list[AssociationRule]:
    """Mine the same rules as ``mine_rules`` with frequency-based pruning.

    Adding an item can only shrink appearance, so once a candidate's
    appearance/total falls to the threshold or below, every superset is
    hopeless and the subtree is skipped.
    """
    if not _check_table(table, config):
        return []
    candidates = candidate_attributes(table, config.antecedent)
    plus, minus, nonzero = _attribute_masks(table, candidates)
    total = len(table.records)
    freq = Fraction(config.min_frequency)
    acc = Fraction(config.min_accuracy)
    fn, fd = freq.numerator, freq.denominator
    an, ad = acc.numerator, acc.denominator
    freq_bound = fn * total
    max_size = min(config.max_consequent_size, len(candidates))
    n = len(candidates)
    rules: list[AssociationRule] = []

    def extend(
        start: int,
        items: tuple[tuple[str, Sign], ...],
        appearance_mask: int,
        applied_mask: int,
    ) -> None:
        depth = len(items) + 1
        for i in range(start, n):
            new_applied_mask = applied_mask & nonzero[i]
            applied = new_applied_mask.bit_count()
            for sign, chosen in ((Sign.PLUS, plus[i]), (Sign.MINUS, minus[i])):
                new_mask = appearance_mask & chosen
                appearance = new_mask.bit_count()
                survives_frequency = appearance * fd > freq_bound
                if survives_frequency and appearance * ad > an * applied:
                    rules.append(
                        AssociationRule(
                            antecedent=config.antecedent,
                            consequent=Consequent(items + ((candidates[i], sign),)),
                            appearance=appearance,
                            applied=applied,
                            total=total,
                        )
                    )
                if depth < max_size and survives_frequency:
                    extend(
                        i + 1,
                        items + ((candidates[i], sign),),
                        new_mask,
                        new_applied_mask,
                    )

    full = (1 << total) - 1
    extend(0, (), full, full)
    rules.sort(key=_rule_sort_key(candidates))
    return rules


#: Input bounds for the brute-force oracle.
ORACLE_MAX_PROJECTS = 8
ORACLE_MAX_ATTRIBUTES = 6


def brute_force_oracle(
    projects: Sequence[Project],
    config: MiningConfig = MiningConfig(),
    attributes: Sequence[str] | None = None,
    mode_aware: bool = False,
) -> list[AssociationRule]:
    """Mine rules the slowest possible way, for differential testing.

    Everything is recomputed from the raw projects with plain loops: pairwise
    signs, orientation by re-comparison (not negation), antecedent filtering,
    and candidate scoring. Inputs are capped because the oracle enumerates
    the entire candidate space per call.
    """
    from .dataset import ATTRIBUTES as FULL_UNIVERSE

    universe = tuple(attributes) if attributes is not None else FULL_UNIVERSE
    antecedent = config.antecedent
    consequent_names = [a for a in universe if a not in antecedent.attributes]
    if len(projects) > ORACLE_MAX_PROJECTS:
        raise MiningError(
            f"oracle accepts at most {ORACLE_MAX_PROJECTS} projects"
        )
    if len(consequent_names) > ORACLE_MAX_ATTRIBUTES:
        raise MiningError(
            f"oracle accepts at most {ORACLE_MAX_ATTRIBUTES} candidate attributes"
        )
    pivot = antecedent.pivot

    def raw_signs(left: Project, right: Project) -> dict[str, str]:
        out = {}
        for name in universe:
            a, b = left.value(name), right.value(name)
            out[name] = "+" if a > b else ("-" if a < b else "0")
        return out

    # Build the oriented, antecedent-filtered table as plain dicts.
    rows: list[dict[str, str]] = []
    for i in range(len(projects)):
        for j in range(i + 1, len(projects)):
            left, right = projects[i], projects[j]
            if mode_aware and left.mode is not right.mode:
                continue
            signs = raw_signs(left, right)
            if signs[pivot] == "0":
                continue
            if signs[pivot] == "-":
                signs = raw_signs(right, left)
            if all(signs[name] == sign.value for name, sign in antecedent.items):
                rows.append(signs)

    total = len(rows)
    results: list[AssociationRule] = []
    if total == 0:
        warnings.warn("empty antecedent table: no rules to mine", MiningWarning)
        return results
    max_size = min(config.max_consequent_size, len(consequent_names))
    for size in range(1, max_size + 1):
        for chosen in combinations(consequent_names, size):
            for assignment in _sign_strings(size):
                applied = 0
                appearance = 0
                for row in rows:
                    values = [row[name] for name in chosen]
                    if "0" in values:
                        continue
                    applied += 1
                    if all(v == s for v, s in zip(values, assignment)):
                        appearance += 1
                frequency_ok = Fraction(appearance, total) > Fraction(config.min_frequency)
                accuracy_ok = (
                    applied > 0
                    and Fraction(appearance, applied) > Fraction(config.min_accuracy)
                )
                if frequency_ok and accuracy_ok:
                    consequent = Consequent(
                        tuple(
                            (name, Sign.PLUS if s == "+" else Sign.MINUS)
                            for name, s in zip(chosen, assignment)
                        )
                    )
                    results.append(
                        AssociationRule(
                            antecedent=antecedent,
                            consequent=consequent,
                            appearance=appearance,
                            applied=applied,
                            total=total,
                        )
                    )
    position = {name: index for index, name in enumerate(consequent_names)}
    results.sort(
        key=lambda rule: (
            len(rule.consequent),
            tuple(position[name] for name, _ in rule.consequent.items),
            tuple(sign.value for _, sign in rule.consequent.items),
        )
    )
    return results


def _sign_strings(size: int) -> list[tuple[str, ...]]:
    """All "+"/"-" assignments of the given length, "+" first."""
    assignments: list[tuple[str, ...]] = [()]
    for _ in range(size):
        assignments = [a + (s,) for a in assignments for s in ("+", "-")]
    return assignments
