"""Staircase tests: frozen plateaus, brute-force slope oracles, sweeps."""

from fractions import Fraction as F

import pytest

from betahole.beta_shift import is_admissible
from betahole.farey import standard_word
from betahole.staircase import (
    DepthExceeded,
    critical_slope,
    descendant_words,
    periodic_contexts,
    slope_vector,
    staircase_samples,
    top_shift,
)
from betahole.words import EPSeq, max_rotation

FROZEN_SLOPES = [
    ("(10)", F(1, 2), "(10)", "1(10)"),
    ("(1100)", F(1, 2), "(10)", "1(10)"),
    ("1(10)", F(1, 2), "(10)", "1(10)"),
    ("(110)", F(2, 3), "(110)", "1(110)"),
    ("(100)", F(1, 3), "(100)", "1(010)"),
    ("(10010000)", F(1, 4), "(1000)", "1(0010)"),
    ("(10100)", F(2, 5), "(10100)", "1(01010)"),
    ("(1110)", F(3, 4), "(1110)", "1(1110)"),
]

FROZEN_VECTORS = [
    ("(10)", (F(1, 2),), "endpoint_low"),
    ("(1100)", (F(1, 2), F(1, 2)), "endpoint_low"),
    ("1(10)", (F(1, 2),), "endpoint_high"),
    ("(10010000)", (F(1, 4), F(1, 2)), "endpoint_low"),
]


@pytest.mark.parametrize("txt,slope,lo,hi", FROZEN_SLOPES)
def test_frozen_slopes(txt, slope, lo, hi):
    res = critical_slope(EPSeq.parse(txt))
    assert res.value == slope
    assert res.plateau_low == EPSeq.parse(lo)
    assert res.plateau_high == EPSeq.parse(hi)
    assert res.contains(EPSeq.parse(txt))


@pytest.mark.parametrize("txt,entries,reason", FROZEN_VECTORS)
def test_frozen_vectors(txt, entries, reason):
    vec = slope_vector(EPSeq.parse(txt))
    assert vec.entries == entries
    assert vec.terminal == "exact"
    assert vec.reason == reason
    assert vec.levels == len(entries)


def test_substituted_pair_words():
    s, t = descendant_words([F(2, 5), F(1, 2)])
    assert s == "0101010010"
    assert t == "1001001010"


def _tree_block(g):
    if g == 0:
        return "0"
    if g == 1:
        return "1"
    return max_rotation(standard_word(g))


def _works(d, g, pair):
    word = "".join({"0": pair[0], "1": pair[1]}[c] for c in _tree_block(g))
    return d >= top_shift(EPSeq.periodic(word))


def _farey(max_den):
    return sorted(
        {F(p, q) for q in range(2, max_den + 1) for p in range(1, q)}
    )


def test_slope_matches_brute_force_maximum():
    """Independent oracle: largest working slope over a dense Farey set."""
    grid = _farey(9)
    for d in periodic_contexts(7):
        brute = max(g for g in grid if _works(d, g, ("0", "1")))
        assert critical_slope(d).value == brute, str(d)


@pytest.mark.parametrize(
    "txt,pair,expect",
    [
        ("(1100)", ("01", "10"), F(1, 2)),
        ("(10010000)", ("0100", "1000"), F(1, 2)),
    ],
)
def test_second_level_matches_brute_force(txt, pair, expect):
    d = EPSeq.parse(txt)
    working = [g for g in _farey(8) if _works(d, g, pair)]
    assert max(working) == expect
    assert slope_vector(d).entries[1] == expect


def test_plateau_membership_and_monotonicity():
    prev = None
    for d in periodic_contexts(9):
        res = critical_slope(d)
        assert res.contains(d), str(d)
        if prev is not None:
            assert res.value >= prev
        prev = res.value


def test_vectors_terminate_exactly_on_periodic_contexts():
    for d in periodic_contexts(8):
        vec = slope_vector(d, max_depth=12)
        assert vec.terminal == "exact", str(d)
        assert vec.reason in ("no_descendant", "endpoint_low")
        assert vec.levels == len(vec.entries) >= 1


def test_no_descendant_certificate():
    # when the vector stops for lack of descendants, no padded low-slope
    # word is admissible at the next level, for any modest padding
    for txt in ["(110)", "(10100)", "(111100)"]:
        d = EPSeq.parse(txt)
        vec = slope_vector(d)
        if vec.reason != "no_descendant":
            continue
        s, t = descendant_words(vec.entries)
        for reps in range(1, 13):
            assert not is_admissible(EPSeq.periodic(s * reps + t), d)


def test_endpoint_low_certificate():
    d = EPSeq.parse("(10010000)")
    vec = slope_vector(d)
    assert vec.reason == "endpoint_low"
    s, _ = descendant_words(vec.entries)
    assert top_shift(EPSeq.periodic(s)) == d


def test_first_entry_consistency():
    for d in periodic_contexts(6):
        vec = slope_vector(d, max_depth=1)
        assert vec.entries[0] == critical_slope(d).value


def test_periodic_contexts_small():
    got = [str(d) for d in periodic_contexts(5)]
    assert got == [
        "(10000)",
        "(1000)",
        "(100)",
        "(10100)",
        "(10)",
        "(11000)",
        "(1100)",
        "(11010)",
        "(110)",
        "(11100)",
        "(1110)",
        "(11110)",
    ]


def test_staircase_samples_sorted():
    rows = staircase_samples(periodic_contexts(6))
    betas = [b for b, _ in rows]
    slopes = [g for _, g in rows]
    assert betas == sorted(betas)
    assert all(x <= y for x, y in zip(slopes, slopes[1:]))
    assert (pytest.approx(1.4655712318, abs=1e-9), F(1, 3)) in [
        (b, g) for b, g in rows
    ]


def test_denominator_cap_raises():
    with pytest.raises(DepthExceeded):
        critical_slope(EPSeq.parse("(10100)"), cap=3)
