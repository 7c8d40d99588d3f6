"""Extremal pairs of hole endpoints and the maximal-pair enumeration.

An extremal pair is a primitive word s together with a rotation t of it
such that s^inf comes before t^inf and no rotation of s lands strictly
between them.  The interval (s^inf, t^inf) is then a hole whose survivor
set is as thin as possible, and the pairs that cannot be enlarged(the
maximal ones) carry the plateau structure of the survivor-set boundary.

Two constructions produce every maximal pair: balanced necklaces with the
pair pushed k zeros deep, and a two-root word tree that fills the corner
window left open when no deeper balanced necklace is admissible.
verify_maximal cross-checks candidates with the decision automaton and an
independent periodic-orbit search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from betahole import _kernels
from betahole.beta_shift import is_admissible, max_admissible_below
from betahole.decide import UNCOUNTABLE, HoleSpec, classify
from betahole.farey import cf_expansion, descendant_pair, from_cf, standard_word
from betahole.staircase import critical_slope
from betahole.words import (EPSeq, NoSuchRotationError, check_word,
                            cyclic_extreme, max_rotation, rotations)


@dataclass(frozen=True)
class Balanced:
    """Origin tag: balanced necklace of slope gamma, pushed shift zeros deep."""

    gamma: Fraction
    shift: int


@dataclass(frozen=True)
class TreeWord:
    """Origin tag: node of the two-root word tree grown for slope gamma.

    path spells the descent from the first combined node, L toward the
    all-zero root and R toward the necklace root.
    """

    gamma: Fraction
    path: str


@dataclass(frozen=True)
class Descendant:
    """Origin tag: substitution descendant of a base pair along ratios."""

    base: tuple
    ratios: tuple


Provenance = Optional[Union[Balanced, TreeWord, Descendant]]


def _extremal(s: str, t: str) -> bool:
    if t not in rotations(s):
        return False
    si, ti = EPSeq.periodic(s), EPSeq.periodic(t)
    if not si < ti:
        return False
    return all(EPSeq.periodic(r) <= si or EPSeq.periodic(r) >= ti
               for r in rotations(s))


@dataclass(frozen=True)
class ExtremalPair:
    """A rotation pair (s, t) whose interval no orbit of s enters."""

    s: str
    t: str
    provenance: Provenance = None

    def __post_init__(self):
        check_word(self.s)
        check_word(self.t)
        if not _extremal(self.s, self.t):
            raise ValueError(f"not an extremal pair: ({self.s}, {self.t})")

    @property
    def q(self) -> int:
        return len(self.s)

    @property
    def j(self) -> int:
        """Rotation offset: t equals s[j:] + s[:j]."""
        return (self.s + self.s).index(self.t, 1)

    @property
    def u(self) -> str:
        return self.s[:self.j]

    @property
    def v(self) -> str:
        return self.s[self.j:]

    def s_inf(self) -> EPSeq:
        return EPSeq.periodic(self.s)

    def t_inf(self) -> EPSeq:
        return EPSeq.periodic(self.t)

    def hole(self, closed: bool = False) -> HoleSpec:
        return HoleSpec(self.s_inf(), self.t_inf(), closed)

    def __str__(self):
        return f"({self.s}, {self.t})"


@dataclass(frozen=True)
class MaximalPairRecord:
    """A maximal pair plus the admissible stand-in for its right edge.

    truncated is the greatest admissible sequence at or below s t^inf and
    is present exactly when s t^inf itself is inadmissible.
    """

    pair: ExtremalPair
    truncated: Optional[EPSeq] = None

    def right_edge(self) -> EPSeq:
        if self.truncated is not None:
            return self.truncated
        return EPSeq(self.pair.s, self.pair.t)


def is_extremal(s: str, t: str) -> bool:
    """Whether (s, t) is an extremal rotation pair.

    Checks that t is a cyclic permutation of s, that s^inf precedes
    t^inf, and that every rotation of s periodizes weakly outside the
    open interval between them.
    """
    check_word(s)
    check_word(t)
    if not s or len(s) != len(t):
        raise ValueError("pair words must share a positive length")
    return _extremal(s, t)


def slope_window(g: Fraction) -> int:
    """The n with g in [1/(n+1), 1/n); how many zeros pairs can be pushed."""
    if not 0 < g < 1:
        raise ValueError(f"slope must lie strictly between 0 and 1: {g}")
    return (g.denominator - 1) // g.numerator


def shifted_balanced_pairs(g: Fraction, n: int) -> list[ExtremalPair]:
    """The n zero-shifted variants of the balanced pair of slope g.

    Entry k pairs the greatest rotation beginning 0^k with the least
    rotation beginning 0^(k-1) 1; k = 1 is the plain balanced pair.  A
    NoSuchRotationError from a necklace with no run of n zeros
    propagates: the caller picked n too deep for this slope.
    """
    if n < 1:
        raise ValueError(f"need at least one shift: {n}")
    u = standard_word(g)
    out = []
    for k in range(1, n + 1):
        s = cyclic_extreme(u, "0" * k, "max")
        t = cyclic_extreme(u, "0" * (k - 1) + "1", "min")
        out.append(ExtremalPair(s, t, Balanced(g, k)))
    return out


def rbeta_gammas(gb: Fraction, count_cap: int) -> list[Fraction]:
    """Slopes whose word trees fill the corner window for critical slope gb.

    These are the g whose left mediant parent p satisfies p <= gb < g:
    the odd-length continued-fraction convergents of gb beyond the first,
    then the mediant chain closing in on gb from above, cut at count_cap.
    Unit fractions stay out; their tree is the balanced tree itself.
    """
    terms = cf_expansion(gb)
    out = [from_cf(terms[:m]) for m in range(3, len(terms), 2)]
    if len(terms) % 2:
        head = terms[:-1] + [terms[-1] - 1, 1]
    else:
        head = list(terms)
    out.extend(from_cf(head + [k]) for k in range(1, count_cap + 1))
    return out


def _tree_nodes(u: str, depth: int) -> list[tuple[str, str]]:
    """Mediant words between the roots "0" and u, depth levels deep."""
    out: list[tuple[str, str]] = []
    stack = [("0", u, "", depth)]
    while stack:
        lo, hi, path, left = stack.pop()
        if left <= 0:
            continue
        node = hi + lo
        out.append((node, path))
        stack.append((lo, node, path + "L", left - 1))
        stack.append((node, hi, path + "R", left - 1))
    return out


def _record(pair: ExtremalPair, d: EPSeq) -> MaximalPairRecord:
    edge = EPSeq(pair.s, pair.t)
    if is_admissible(edge, d):
        return MaximalPairRecord(pair)
    return MaximalPairRecord(pair, max_admissible_below(edge, d))


def rbeta_tree_pairs(g: Fraction, n: int, d: EPSeq,
                     depth: int) -> list[MaximalPairRecord]:
    """Maximal pairs read off the two-root word tree of slope g.

    The tree grows between "0" and the least rotation of the slope-g
    necklace; every combined node w yields the candidate pair of the
    greatest rotation of w beginning 0^(n+1) and the least beginning
    0^n 1.  A candidate is kept when s^inf is admissible and both
    endpoints clear the corner of the critical slope's rotation set:
    s^inf above 0 u^inf and t^inf above u^inf for the least admissible
    balanced rotation u.  Right edges that periodize inadmissibly are
    truncated.
    """
    gb = critical_slope(d).value
    infx = EPSeq.periodic(standard_word(gb))
    zero_infx = EPSeq("0" + infx.pre, infx.per)
    root = standard_word(g)
    recs = []
    seen = set()
    for node, path in _tree_nodes(root, depth):
        try:
            s = cyclic_extreme(node, "0" * (n + 1), "max")
            t = cyclic_extreme(node, "0" * n + "1", "min")
        except NoSuchRotationError:
            continue
        if (s, t) in seen:
            continue
        seen.add((s, t))
        si, ti = EPSeq.periodic(s), EPSeq.periodic(t)
        if not is_admissible(si, d):
            continue
        if not (zero_infx < si and infx < ti):
            continue
        recs.append(_record(ExtremalPair(s, t, TreeWord(g, path)), d))
    recs.sort(key=lambda r: r.pair.s_inf())
    return recs


def farey_descendants(base: ExtremalPair,
                      rs: Iterable[Fraction]) -> ExtremalPair:
    """Substitution descendant of base along the slopes rs, left to right.

    Each step rewrites the balanced pair of the next slope over the
    current two-word alphabet.  An empty rs returns base unchanged.
    """
    ratios = tuple(rs)
    cur = (base.s, base.t)
    for r in ratios:
        cur = descendant_pair(cur, r)
    if not ratios:
        return base
    return ExtremalPair(cur[0], cur[1], Descendant((base.s, base.t), ratios))


def verify_maximal(pair: ExtremalPair, d: EPSeq, period_cap: int = 0) -> bool:
    """Check that no avoidance interval strictly beyond the pair survives.

    Automaton route: classify the closed hole [s^inf, t^inf].  Any
    qualifying cycle with a one in it carries a genuine survivor beyond
    the s orbit, so the pair is not maximal.  All-zero cycles are
    tolerated: they only admit words u 1 0^inf, finite expansions whose
    quasi-greedy form trails into the expansion of one, which either
    meets the closed hole or would surface as a nonzero cycle itself.

    Oracle route: enumerate admissible periodic orbits up to period_cap
    and insist none but the s orbit clears the open hole.  period_cap
    defaults to three times the pair's primitive length.
    """
    si, ti = pair.s_inf(), pair.t_inf()
    if not is_admissible(si, d):
        raise ValueError(f"pair endpoints are inadmissible here: {pair}")
    if period_cap <= 0:
        period_cap = 3 * len(si.per)
    res = classify(d, HoleSpec(si, ti, closed=True))
    if res.kind == UNCOUNTABLE:
        return False
    if any(set(cyc) != {"0"} for cyc in res.cycles):
        return False
    own = max_rotation(si.per)
    for m in range(1, period_cap + 1):
        found = _kernels.avoiding_necklaces(
            d.pre, d.per, si.pre, si.per, ti.pre, ti.per, m, cap=2)
        if any(w != own for w in found):
            return False
    return True


def enumerate_maximal_pairs(d: EPSeq, q_cap: int = 20, tree_depth: int = 8,
                            count_cap: int = 8) -> list[MaximalPairRecord]:
    """All maximal pairs for d within the caps, sorted by left endpoint.

    Balanced necklaces of every slope up to the critical one contribute
    their zero-shifted pairs; unless the critical slope sits at the left
    end of its plateau (where the corner window degenerates), the word
    trees of the slopes from rbeta_gammas contribute as well.  Records
    carry truncated right edges where s t^inf is inadmissible.
    """
    if q_cap < 1 or tree_depth < 0 or count_cap < 0:
        raise ValueError("caps must be positive")
    gb = critical_slope(d).value
    n = slope_window(gb)
    recs = []
    for q in range(2, q_cap + 1):
        for p in range(1, q):
            g = Fraction(p, q)
            if g.denominator != q or g > gb:
                continue
            recs.extend(_record(pr, d) for pr in shifted_balanced_pairs(g, n))
    if EPSeq.periodic(max_rotation(standard_word(gb))) != d:
        for g in rbeta_gammas(gb, count_cap):
            if g.denominator <= q_cap:
                recs.extend(rbeta_tree_pairs(g, n, d, tree_depth))
    recs.sort(key=lambda r: (r.pair.s_inf(), r.pair.t_inf()))
    out: list[MaximalPairRecord] = []
    seen = set()
    for rec in recs:
        key = (rec.pair.s_inf(), rec.pair.t_inf())
        if key not in seen:
            seen.add(key)
            out.append(rec)
    return out
