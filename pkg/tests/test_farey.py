from fractions import Fraction as F

import pytest

from betahole.farey import (
    balanced_pair,
    cf_expansion,
    descendant_pair,
    descendant_word,
    farey_children,
    farey_parents,
    from_cf,
    mediant,
    slope,
    standard_word,
)
from betahole.words import is_cyclically_balanced, is_primitive, rotations


def all_slopes(maxq):
    for q in range(2, maxq + 1):
        for p in range(1, q):
            if F(p, q).denominator == q:
                yield F(p, q)


def test_cf_expansion():
    assert cf_expansion(F(1, 2)) == [2]
    assert cf_expansion(F(2, 5)) == [2, 2]
    assert cf_expansion(F(3, 4)) == [1, 3]
    assert cf_expansion(F(2, 7)) == [3, 2]
    assert cf_expansion(F(3, 11)) == [3, 1, 2]
    with pytest.raises(ValueError):
        cf_expansion(F(3, 2))


def test_cf_round_trip():
    for g in all_slopes(16):
        terms = cf_expansion(g)
        assert terms[-1] >= 2
        assert from_cf(terms) == g


def test_parents():
    assert farey_parents(F(1, 2)) == (F(0), F(1))
    assert farey_parents(F(2, 5)) == (F(1, 3), F(1, 2))
    assert farey_parents(F(3, 4)) == (F(2, 3), F(1))
    for g in all_slopes(14):
        lo, hi = farey_parents(g)
        assert lo < g < hi
        # Farey neighbors: determinant one on either side
        for a, b in ((lo, g), (g, hi)):
            assert b.numerator * a.denominator - a.numerator * b.denominator == 1


def test_children():
    assert farey_children(F(1, 2)) == (F(1, 3), F(2, 3))
    assert farey_children(F(1, 3)) == (F(1, 4), F(2, 5))
    for g in all_slopes(12):
        lo, hi = farey_children(g)
        assert farey_parents(lo)[1] == g
        assert farey_parents(hi)[0] == g


def test_standard_word():
    assert standard_word(F(1, 2)) == "01"
    assert standard_word(F(1, 3)) == "001"
    assert standard_word(F(2, 5)) == "00101"
    assert standard_word(F(3, 5)) == "01011"
    assert standard_word(F(3, 4)) == "0111"
    assert standard_word(F(1, 4)) == "0001"


def test_balanced_pair_values():
    assert balanced_pair(F(1, 2)) == ("01", "10")
    assert balanced_pair(F(1, 3)) == ("010", "100")
    assert balanced_pair(F(2, 5)) == ("01010", "10010")
    assert balanced_pair(F(3, 5)) == ("01101", "10101")
    assert balanced_pair(F(3, 4)) == ("0111", "1011")
    assert balanced_pair(F(2, 3)) == ("011", "101")
    assert balanced_pair(F(1, 4)) == ("0100", "1000")


def test_balanced_pair_structure():
    for g in all_slopes(13):
        u = standard_word(g)
        s, t = balanced_pair(g)
        assert slope(u) == g
        assert is_primitive(u)
        assert is_cyclically_balanced(u)
        rots = rotations(u)
        assert s in rots and t in rots and u == min(rots)
        assert all(s >= r for r in rots if r[0] == "0")
        assert all(t <= r for r in rots if r[0] == "1")


def test_descendants():
    assert descendant_pair(("0", "1"), F(2, 5)) == balanced_pair(F(2, 5))
    assert descendant_pair(("0100", "1000"), F(1, 2)) == (
        "01001000",
        "10000100",
    )
    assert descendant_word(("01", "10"), F(1, 3)) == "010110"
    # substitution follows the extreme rotations, not the standard word
    assert descendant_pair(("01", "10"), F(1, 4)) == ("01100101", "10010101")
    # substituting a balanced pair keeps lengths and leading blocks coherent
    s, t = descendant_pair(balanced_pair(F(1, 2)), F(1, 3))
    assert (s, t) == ("011001", "100101")


def test_mediant():
    assert mediant(F(1, 3), F(1, 2)) == F(2, 5)
    assert mediant(F(0), F(1)) == F(1, 2)
