"""The devil's staircase of critical hole slopes and its descendant refinements.

For each base the rational slopes whose balanced-word powers remain
admissible form an initial segment of (0,1); the supremum is attained on a
plateau bracketed by two explicit eventually periodic sequences, so the
critical slope is found by a Stern-Brocot walk comparing d against plateau
endpoints.  Inside a plateau the construction restarts with the balanced
pair substituted for the two letters, producing a vector of slopes; the
walk and all tests are shared between the plain and substituted levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from betahole.beta_shift import (
    beta_of_d,
    check_expansion_of_one,
    is_admissible,
    is_valid_expansion_of_one,
)
from betahole.farey import (
    balanced_pair,
    descendant_pair,
    farey_children,
    farey_parents,
    standard_word,
)
from betahole.words import EPSeq, max_rotation

DENOMINATOR_CAP = 10**6
DEFAULT_MAX_DEPTH = 32


class DepthExceeded(RuntimeError):
    """The Stern-Brocot walk passed the safety cap.

    Cannot happen for a valid eventually periodic d (aperiodic boundary
    sequences are never eventually periodic), so this signals a bug or a
    deliberately tiny cap.
    """


def top_shift(x: EPSeq) -> EPSeq:
    """Largest shifted tail of x; the binding object for admissibility."""
    return max(x.shifts())


def _tree_word(g: Fraction, sub) -> str:
    """Word of the Stern-Brocot node g over the substituted alphabet.

    Built as right-parent word followed by left-parent word, which keeps
    the block maximal among its rotations; the boundary nodes 0 and 1 map
    to the two alphabet letters.
    """
    if g == 0:
        return sub["0"]
    if g == 1:
        return sub["1"]
    return "".join(sub[c] for c in max_rotation(standard_word(g)))


def _pad_reps(d: EPSeq, block_len: int, tail_len: int) -> int:
    """Copies of a block that push any later perturbation past the horizon
    at which comparisons with d are already decided."""
    horizon = len(d.pre) + math.lcm(block_len, len(d.per)) + tail_len + 2 * block_len
    return 2 + (2 * horizon) // block_len


def _works(d: EPSeq, word: str) -> bool:
    """Whether the periodisation of word stays admissible (all rotations)."""
    return is_admissible(EPSeq.periodic(word), d)


def _exists_any(d: EPSeq, s: str, t: str) -> bool:
    """Is some slope at this level admissible at all?

    The low-slope words are t padded with copies of s; their rotations
    decrease to the padded limit, so one sufficiently padded test decides
    the existential question exactly.
    """
    return _works(d, s * _pad_reps(d, len(s), len(t)) + t)


def _exists_above(d: EPSeq, g: Fraction, sub) -> bool:
    """Is some slope strictly above g admissible at this level?

    Slopes approaching g from above have words w_parent w_g^k; padding by
    the same horizon argument reduces the existential to one test.  Both
    blocks must be taken in tree-word form: mixing rotations manufactures
    letter pairs at the junction that no approximant contains.
    """
    a = _tree_word(g, sub)
    b = _tree_word(farey_parents(g)[1], sub)
    return _works(d, a * _pad_reps(d, len(a), len(b)) + b)


@dataclass(frozen=True)
class SlopeResult:
    """A critical slope with the plateau that certifies it."""

    value: Fraction
    plateau_low: EPSeq
    plateau_high: EPSeq

    def contains(self, d: EPSeq) -> bool:
        return self.plateau_low <= d <= self.plateau_high


@dataclass(frozen=True)
class SlopeVector:
    """Vector of critical slopes, one per substitution level.

    terminal is "exact" when the construction provably stops: reason is
    "no_descendant" (no deeper slope is admissible), "endpoint_low" or
    "endpoint_high" (d sits exactly on a plateau boundary).  terminal is
    "truncated" with reason "max_depth" when the level budget ran out.
    """

    entries: tuple[Fraction, ...]
    terminal: str
    reason: str
    levels: int


def _level_slope(d: EPSeq, s: str, t: str, cap: int = DENOMINATOR_CAP):
    """Maximal slope whose substituted balanced word stays admissible.

    Returns a SlopeResult, or None when no slope works at this level.
    Walks the Stern-Brocot tree: admissibility of the node word sends the
    walk right (when a strictly larger slope still works) or terminates;
    otherwise left.
    """
    sub = {"0": s, "1": t}
    if not _exists_any(d, s, t):
        return None
    g = Fraction(1, 2)
    while True:
        if g.denominator > cap:
            raise DepthExceeded(f"denominator cap {cap} passed at {g}")
        w = _tree_word(g, sub)
        lo = top_shift(EPSeq.periodic(w))
        if d >= lo:
            if _exists_above(d, g, sub):
                g = farey_children(g)[1]
            else:
                w2 = _tree_word(farey_parents(g)[1], sub)
                hi = top_shift(EPSeq(w2, w))
                return SlopeResult(g, lo, hi)
        else:
            g = farey_children(g)[0]


def critical_slope(d: EPSeq, cap: int = DENOMINATOR_CAP) -> SlopeResult:
    """The unique rational slope whose plateau contains d."""
    check_expansion_of_one(d)
    res = _level_slope(d, "0", "1", cap)
    if res is None:  # pragma: no cover - every valid d admits tiny slopes
        raise DepthExceeded(f"no admissible slope found for {d}")
    assert res.contains(d)
    return res


def slope_vector(
    d: EPSeq, max_depth: int = DEFAULT_MAX_DEPTH, cap: int = DENOMINATOR_CAP
) -> SlopeVector:
    """Critical slopes level by level until the construction stops."""
    check_expansion_of_one(d)
    entries: list[Fraction] = []
    pair = ("0", "1")
    while len(entries) < max_depth:
        res = _level_slope(d, pair[0], pair[1], cap)
        if res is None:
            return SlopeVector(tuple(entries), "exact", "no_descendant", len(entries))
        entries.append(res.value)
        if d == res.plateau_low:
            return SlopeVector(tuple(entries), "exact", "endpoint_low", len(entries))
        if d == res.plateau_high:
            return SlopeVector(tuple(entries), "exact", "endpoint_high", len(entries))
        pair = descendant_pair(pair, res.value)
    return SlopeVector(tuple(entries), "truncated", "max_depth", len(entries))


def descendant_words(entries) -> tuple[str, str]:
    """The substituted extremal pair for a vector of slopes."""
    pair = ("0", "1")
    for g in entries:
        pair = descendant_pair(pair, g)
    return pair


def periodic_contexts(max_period: int) -> list[EPSeq]:
    """All valid purely periodic expansions of 1 with period <= max_period.

    Returned in increasing order of the underlying base, which coincides
    with lexicographic order on d.
    """
    out = []
    for length in range(2, max_period + 1):
        for bits in range(1 << (length - 1), 1 << length):
            w = format(bits, "b")
            if (w + w).find(w, 1) == length:
                d = EPSeq.periodic(w)
                if is_valid_expansion_of_one(d):
                    out.append(d)
    out.sort()
    return out


def staircase_samples(d_list) -> list[tuple[float, Fraction]]:
    """(base, critical slope) pairs sorted by base; plotting plumbing."""
    rows = [(float(beta_of_d(d)), critical_slope(d).value) for d in d_list]
    rows.sort(key=lambda r: r[0])
    return rows
