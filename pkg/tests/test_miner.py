import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairmine.comparator import (
    Antecedent,
    Sign,
    apply_antecedent,
    build_comparison_table,
)
from pairmine.dataset import Rating
from pairmine.miner import (
    AssociationRule,
    Consequent,
    MiningConfig,
    MiningError,
    MiningWarning,
    brute_force_oracle,
    candidate_attributes,
    evaluate_candidate,
    mine_rules,
    mine_rules_optimized,
    prune_for_consequent,
)
from tests.conftest import make_project, random_project_set


def antecedent_table(projects, mode_aware=False):
    return apply_antecedent(build_comparison_table(projects, mode_aware=mode_aware))


def small_attrs(n):
    # compact attribute universe for oracle comparisons: pivot, ACTUAL, extras
    extras = ["RELY", "DATA", "ACAP", "PCAP", "TIME", "STOR"][: n - 3]
    return ["CPLX"] + extras + ["LOC", "ACTUAL"]


def test_consequent_validation():
    Consequent((("RELY", Sign.PLUS), ("LOC", Sign.MINUS)))
    with pytest.raises(ValueError):
        Consequent(())
    with pytest.raises(ValueError):
        Consequent((("RELY", Sign.ZERO),))
    with pytest.raises(ValueError):
        Consequent((("RELY", Sign.PLUS), ("RELY", Sign.MINUS)))


def test_mining_config_validation():
    config = MiningConfig(min_frequency=0.5, min_accuracy=0.75)
    assert config.min_frequency == Fraction(1, 2)
    assert config.min_accuracy == Fraction(3, 4)
    with pytest.raises(ValueError):
        MiningConfig(min_frequency=Fraction(-1, 2))
    with pytest.raises(ValueError):
        MiningConfig(min_accuracy=Fraction(5, 4))
    with pytest.raises(ValueError):
        MiningConfig(max_consequent_size=0)


def test_candidate_attributes_exclude_antecedent():
    table = antecedent_table(
        [make_project(1, CPLX=Rating.H, loc=3.0, actual=9.0),
         make_project(2, CPLX=Rating.L, loc=8.0, actual=2.0)]
    )
    names = candidate_attributes(table)
    assert "CPLX" not in names
    assert "ACTUAL" not in names
    assert "LOC" in names and "RELY" in names
    assert len(names) == 15


def test_rule_ratio_fields():
    rule = AssociationRule(
        antecedent=Antecedent.parse("CPLX=+,ACTUAL=-"),
        consequent=Consequent((("LOC", Sign.MINUS),)),
        appearance=3,
        applied=4,
        total=5,
    )
    assert rule.frequency == Fraction(3, 5)
    assert rule.accuracy == Fraction(3, 4)


def test_evaluate_candidate_matches_hand_count():
    # three oriented records land in the antecedent table by construction
    projects = [
        make_project(1, CPLX=Rating.VH, loc=1.0, actual=10.0, RELY=Rating.H),
        make_project(2, CPLX=Rating.H, loc=2.0, actual=20.0, RELY=Rating.H),
        make_project(3, CPLX=Rating.N, loc=3.0, actual=30.0, RELY=Rating.L),
        make_project(4, CPLX=Rating.L, loc=4.0, actual=40.0, RELY=Rating.VH),
    ]
    table = antecedent_table(projects)
    assert len(table.records) == 6
    appearance, applied, total, frequency, accuracy = evaluate_candidate(
        Consequent((("LOC", Sign.MINUS),)), table
    )
    assert (appearance, applied, total) == (6, 6, 6)
    assert frequency == Fraction(1) and accuracy == Fraction(1)
    appearance, applied, total, _, _ = evaluate_candidate(
        Consequent((("RELY", Sign.PLUS),)), table
    )
    # RELY: 1vs3 +, 1vs4 -, 2vs3 +, 2vs4 -, 3vs4 outside? all pairs oriented
    assert total == 6
    assert applied == 5  # one RELY tie (1 vs 2)
    assert appearance == 2


def test_evaluate_candidate_rejects_empty_table():
    table = antecedent_table(
        [make_project(1, CPLX=Rating.H, loc=1.0, actual=1.0),
         make_project(2, CPLX=Rating.H, loc=2.0, actual=2.0)]
    )
    assert len(table.records) == 0
    with pytest.raises(MiningError, match="empty antecedent table"):
        evaluate_candidate(Consequent((("LOC", Sign.MINUS),)), table)


def test_prune_for_consequent_drops_zero_rows():
    projects = [
        make_project(1, CPLX=Rating.VH, loc=5.0, actual=10.0, RELY=Rating.H),
        make_project(2, CPLX=Rating.H, loc=5.0, actual=20.0, RELY=Rating.H),
        make_project(3, CPLX=Rating.N, loc=3.0, actual=30.0, RELY=Rating.L),
    ]
    table = antecedent_table(projects)
    pruned = prune_for_consequent(table, ["LOC"])
    assert all(r.signs["LOC"] is not Sign.ZERO for r in pruned.records)
    assert pruned.pairs_generated == table.pairs_generated
    assert pruned.pivot_ties_pruned == table.pivot_ties_pruned


def test_mine_rules_rejects_unfiltered_table():
    raw = build_comparison_table(
        [make_project(1, CPLX=Rating.H, loc=1.0, actual=9.0),
         make_project(2, CPLX=Rating.L, loc=2.0, actual=1.0)]
    )
    with pytest.raises(MiningError, match="antecedent"):
        mine_rules(raw)


def test_mine_rules_warns_and_returns_empty_on_empty_table():
    table = antecedent_table(
        [make_project(1, CPLX=Rating.H, loc=1.0, actual=1.0),
         make_project(2, CPLX=Rating.H, loc=2.0, actual=2.0)]
    )
    with pytest.warns(MiningWarning):
        assert mine_rules(table) == []


def test_canonical_rule_order():
    rng = random.Random(11)
    projects = random_project_set(rng, 7)
    attrs = small_attrs(6)
    table = apply_antecedent(
        build_comparison_table(projects, attributes=attrs)
    )
    if not table.records:
        pytest.skip("degenerate draw")
    rules = mine_rules(table)
    keys = []
    order = {name: k for k, name in enumerate(attrs)}
    for rule in rules:
        size = len(rule.consequent.items)
        cols = tuple(order[a] for a, _ in rule.consequent.items)
        signs = tuple(0 if s is Sign.PLUS else 1 for _, s in rule.consequent.items)
        keys.append((size, cols, signs))
    assert keys == sorted(keys)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(3, 8))
def test_engines_and_oracle_agree(seed, size):
    rng = random.Random(seed)
    projects = random_project_set(rng, size)
    attrs = small_attrs(rng.randint(4, 6))
    mode_aware = rng.random() < 0.3
    config = MiningConfig()
    table = apply_antecedent(
        build_comparison_table(projects, attributes=attrs, mode_aware=mode_aware)
    )
    if table.records:
        faithful = mine_rules(table, config)
        optimized = mine_rules_optimized(table, config)
        oracle = brute_force_oracle(
            projects, config, attributes=attrs, mode_aware=mode_aware
        )
    else:
        with pytest.warns(MiningWarning):
            faithful = mine_rules(table, config)
        with pytest.warns(MiningWarning):
            optimized = mine_rules_optimized(table, config)
        with pytest.warns(MiningWarning):
            oracle = brute_force_oracle(
                projects, config, attributes=attrs, mode_aware=mode_aware
            )
    assert faithful == optimized
    assert [
        (r.consequent, r.appearance, r.applied, r.total) for r in faithful
    ] == [
        (r.consequent, r.appearance, r.applied, r.total) for r in oracle
    ]


def test_single_count_consistency_on_emitted_rules(rng):
    for _ in range(25):
        projects = random_project_set(rng, rng.randint(3, 8))
        attrs = small_attrs(rng.randint(4, 6))
        table = apply_antecedent(build_comparison_table(projects, attributes=attrs))
        if not table.records:
            continue
        for rule in mine_rules(table):
            appearance, applied, total, _, _ = evaluate_candidate(
                rule.consequent, table
            )
            assert (appearance, applied, total) == (
                rule.appearance, rule.applied, rule.total
            )
            assert rule.appearance * 2 > rule.total
            assert rule.appearance * 4 > rule.applied * 3


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_antimonotone_counts_under_extension(seed):
    rng = random.Random(seed)
    projects = random_project_set(rng, rng.randint(4, 8))
    attrs = small_attrs(6)
    table = apply_antecedent(build_comparison_table(projects, attributes=attrs))
    if not table.records:
        return
    names = candidate_attributes(table)
    chain_len = rng.randint(2, min(4, len(names)))
    chosen = rng.sample(names, chain_len)
    signs = [rng.choice([Sign.PLUS, Sign.MINUS]) for _ in chosen]
    prev_appearance = None
    prev_applied = None
    for k in range(1, chain_len + 1):
        consequent = Consequent(tuple(zip(chosen[:k], signs[:k])))
        appearance, applied, _, _, _ = evaluate_candidate(consequent, table)
        if prev_appearance is not None:
            assert appearance <= prev_appearance
            assert applied <= prev_applied
        prev_appearance, prev_applied = appearance, applied


def test_strict_threshold_boundaries_never_emit():
    # Construct a table where a candidate sits exactly at frequency 1/2:
    # 4 records, LOC=- in exactly 2 of them, LOC never ties.
    projects = [
        make_project(1, CPLX=Rating.VH, loc=8.0, actual=50.0),
        make_project(2, CPLX=Rating.H, loc=2.0, actual=60.0),
        make_project(3, CPLX=Rating.N, loc=4.0, actual=70.0),
        make_project(4, CPLX=Rating.L, loc=6.0, actual=80.0),
    ]
    table = antecedent_table(projects)
    assert len(table.records) == 6
    appearance, applied, total, frequency, accuracy = evaluate_candidate(
        Consequent((("LOC", Sign.MINUS),)), table
    )
    assert frequency == Fraction(appearance, total)
    rules = mine_rules(table)
    for rule in rules:
        assert rule.frequency > Fraction(1, 2)
        assert rule.accuracy > Fraction(3, 4)
    # exact-boundary candidates are absent from the output
    for name_sign in product(candidate_attributes(table), (Sign.PLUS, Sign.MINUS)):
        consequent = Consequent((name_sign,))
        appearance, applied, total, frequency, accuracy = evaluate_candidate(
            consequent, table
        )
        emitted = any(r.consequent == consequent for r in rules)
        should = frequency > Fraction(1, 2) and applied > 0 and accuracy > Fraction(3, 4)
        assert emitted == should


def test_max_consequent_size_limits_depth(rng):
    projects = random_project_set(rng, 6)
    attrs = small_attrs(6)
    table = apply_antecedent(build_comparison_table(projects, attributes=attrs))
    if not table.records:
        pytest.skip("degenerate draw")
    config = MiningConfig(max_consequent_size=1)
    for rule in mine_rules(table, config):
        assert len(rule.consequent.items) == 1
    deep = mine_rules(table, MiningConfig())
    singles = [r for r in deep if len(r.consequent.items) == 1]
    assert [r.consequent for r in mine_rules(table, config)] == [
        r.consequent for r in singles
    ]


def test_oracle_rejects_oversized_inputs(rng):
    projects = random_project_set(rng, 9)
    with pytest.raises(ValueError):
        brute_force_oracle(projects, MiningConfig(), attributes=small_attrs(5))
    projects = random_project_set(rng, 5)
    with pytest.raises(ValueError):
        brute_force_oracle(
            projects, MiningConfig(), attributes=small_attrs(9)
        )
