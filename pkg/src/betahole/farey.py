"""Stern-Brocot tree combinatorics on rational slopes in (0, 1).

Continued fractions, mediants and parents, mechanical (balanced) words,
and the extremal balanced pair attached to each rational slope.  The pair
for slope p/q consists of the largest rotation of the balanced necklace
that starts with 0 and the smallest rotation that starts with 1; these are
the building blocks for hole endpoints throughout the package.
"""

from __future__ import annotations

from fractions import Fraction

from betahole.words import cyclic_extreme, min_rotation


def cf_expansion(g: Fraction) -> list[int]:
    """Continued fraction terms [a1, ..., an] with g = [0; a1, ..., an].

    Canonical form: the last term is at least 2 (plain Euclid guarantees it
    for g in (0, 1) in lowest terms).
    """
    if not 0 < g < 1:
        raise ValueError(f"slope must lie strictly between 0 and 1: {g}")
    terms = []
    a, b = g.denominator, g.numerator
    while b:
        terms.append(a // b)
        a, b = b, a % b
    return terms


def from_cf(terms: list[int]) -> Fraction:
    """Evaluate [0; a1, ..., an]; accepts non-canonical term lists."""
    x = Fraction(0)
    for a in reversed(terms):
        if a + x == 0:
            raise ValueError(f"continued fraction diverges: {terms}")
        x = Fraction(1, a + x)
    return x


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """Freshman sum; in lowest terms automatically when a, b are Farey neighbors."""
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def farey_parents(g: Fraction) -> tuple[Fraction, Fraction]:
    """The two Stern-Brocot ancestors whose mediant is g, ordered (left, right).

    The endpoints 0 and 1 act as parents for shallow nodes; parents of 1/2
    are (0, 1).
    """
    terms = cf_expansion(g)
    p = from_cf(terms[:-1]) if len(terms) > 1 else Fraction(0)
    q = from_cf(terms[:-1] + [terms[-1] - 1])
    lo, hi = sorted((p, q))
    assert mediant(lo, hi) == g
    return lo, hi


def farey_children(g: Fraction) -> tuple[Fraction, Fraction]:
    lo, hi = farey_parents(g)
    return mediant(lo, g), mediant(g, hi)


def standard_word(g: Fraction) -> str:
    """Lexicographically least balanced necklace of slope g (p ones, q letters)."""
    if not 0 < g < 1:
        raise ValueError(f"slope must lie strictly between 0 and 1: {g}")
    p, q = g.numerator, g.denominator
    w = "".join(str((i + 1) * p // q - i * p // q) for i in range(q))
    return min_rotation(w)


def slope(w: str) -> Fraction:
    if not w:
        raise ValueError("empty word has no slope")
    return Fraction(w.count("1"), len(w))


def balanced_pair(g: Fraction) -> tuple[str, str]:
    """Extremal rotations (s, t) of the balanced necklace of slope g.

    s is the greatest rotation beginning with 0, t the least beginning
    with 1.  Both are primitive and cyclically balanced.
    """
    u = standard_word(g)
    return cyclic_extreme(u, "0", "max"), cyclic_extreme(u, "1", "min")


def descendant_pair(base: tuple[str, str], g: Fraction) -> tuple[str, str]:
    """Balanced pair of slope g written over the alphabet {base s, base t}.

    Substitutes the base words for the letters of balanced_pair(g); with
    base ("0", "1") this is balanced_pair itself.
    """
    sub = {"0": base[0], "1": base[1]}
    s, t = balanced_pair(g)
    return "".join(sub[c] for c in s), "".join(sub[c] for c in t)


def descendant_word(base: tuple[str, str], g: Fraction) -> str:
    """standard_word(g) written over the alphabet {base s, base t}."""
    sub = {"0": base[0], "1": base[1]}
    return "".join(sub[c] for c in standard_word(g))
