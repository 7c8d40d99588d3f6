"""Expansions in base beta for 1 < beta < 2.

A context is determined by the zero-tail-free expansion d of the point 1;
every question about admissible digit sequences reduces to lexicographic
comparisons of shifts against d, which EPSeq makes decidable.  Numeric
values are produced with mpmath at a configurable working precision and
only where a real number is genuinely wanted (solving for beta, rasters,
reporting); all structural decisions stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath

from betahole.words import EPSeq, check_word

DEFAULT_DPS = 40


def check_expansion_of_one(d: EPSeq) -> EPSeq:
    """Validate d as the zero-tail-free expansion of 1 for some beta in (1,2).

    Requires: first letter 1, infinitely many 1s, not identically 1, and
    every shifted tail at most d.
    """
    if d.letter(0) != "1":
        raise ValueError(f"expansion of 1 must start with 1: {d}")
    if d.ends_in_zeros():
        raise ValueError(f"expansion of 1 cannot end in zeros: {d}")
    if d == EPSeq.periodic("1"):
        raise ValueError("all-ones expansion corresponds to beta = 2")
    for k in range(1, len(d.pre) + len(d.per)):
        if d.shift(k) > d:
            raise ValueError(f"shift {k} of {d} exceeds the whole sequence")
    return d


def is_valid_expansion_of_one(d: EPSeq) -> bool:
    try:
        check_expansion_of_one(d)
    except ValueError:
        return False
    return True


def is_admissible(x: EPSeq, d: EPSeq) -> bool:
    """Membership of x in the closed shift determined by d: every tail <= d."""
    return all(x.shift(k) <= d for k in range(len(x.pre) + len(x.per)))


def orbit_strictly_below(x: EPSeq, d: EPSeq) -> bool:
    return all(x.shift(k) < d for k in range(len(x.pre) + len(x.per)))


def seq_value(x: EPSeq, beta) -> mpmath.mpf:
    """Numeric value sum x_i beta^-(i+1) of the digit sequence x.

    Carries 25 guard digits beyond the ambient precision so that callers
    comparing nearby values at their own precision see clean differences.
    """
    with mpmath.extradps(25):
        return _seq_value_raw(x, beta)


def _seq_value_raw(x: EPSeq, beta) -> mpmath.mpf:
    b = mpmath.mpf(beta)
    binv = 1 / b
    total = mpmath.mpf(0)
    w = binv
    for c in x.pre:
        if c == "1":
            total += w
        w *= binv
    block = mpmath.mpf(0)
    wb = mpmath.mpf(1)
    for c in x.per:
        wb *= binv
        if c == "1":
            block += wb
    total += (binv ** len(x.pre)) * block / (1 - binv ** len(x.per))
    return total


@lru_cache(maxsize=None)
def beta_of_d(d: EPSeq, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """The base whose expansion of 1 is d, by bisection on (1, 2).

    seq_value(d, .) is strictly decreasing in beta, so the root is simple.
    """
    check_expansion_of_one(d)
    with mpmath.workdps(dps + 10):
        lo, hi = mpmath.mpf("1.000000001"), mpmath.mpf(2)
        for _ in range(8 + int(3.4 * dps)):
            mid = (lo + hi) / 2
            if seq_value(d, mid) >= 1:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def greedy_digits(beta, x, n: int) -> str:
    """First n greedy digits of x in [0, 1]; numeric, for display and oracles."""
    b = mpmath.mpf(beta)
    v = mpmath.mpf(x)
    out = []
    for _ in range(n):
        v *= b
        if v >= 1:
            out.append("1")
            v -= 1
        else:
            out.append("0")
    return "".join(out)


def expansion_of_one_digits(beta, n: int) -> str:
    """First n digits of the zero-tail-free expansion of 1; numeric.

    Runs the greedy algorithm from 1; when the orbit hits 0 exactly the
    greedy expansion is finite, which floating point cannot certify, so
    callers needing exactness should work from d itself.
    """
    return greedy_digits(beta, 1, n)


def quasigreedy_of_one(greedy: str) -> EPSeq:
    """Periodic expansion of 1 from a finite greedy expansion word.

    A finite greedy expansion ends in 1; lowering that digit and
    repeating the word forever preserves the value and removes the zero
    tail.  Raises ValueError if the result fails the shift test.
    """
    check_word(greedy)
    if not greedy.endswith("1"):
        raise ValueError(f"finite greedy expansions end in 1: {greedy!r}")
    return check_expansion_of_one(EPSeq.periodic(greedy[:-1] + "0"))


def to_quasigreedy(x: EPSeq, d: EPSeq) -> EPSeq:
    """Zero-tail-free sequence with the same value as x.

    A finite expansion u1 followed by zeros is value-equal to u0 followed
    by d.  Identity on sequences already free of zero tails and on 0 itself.
    """
    if not x.ends_in_zeros() or x.is_zero():
        return x
    u = x.pre
    return EPSeq(u[:-1] + "0" + d.pre, d.per)


def value_compare(x: EPSeq, y: EPSeq, d: EPSeq) -> int:
    """Order of the values of x and y; exact for admissible sequences.

    On zero-tail-free admissible sequences lexicographic and value order
    agree, so both arguments are normalised first.
    """
    return to_quasigreedy(x, d).compare(to_quasigreedy(y, d))


def _canon_offset(o: int, pre_len: int, per_len: int) -> int:
    return o if o < pre_len else pre_len + (o - pre_len) % per_len


def _step_offsets(offsets, c: str, d: EPSeq, pre_len: int, per_len: int):
    """Advance the set of tight suffix-match lengths by one emitted letter.

    Returns the new frozenset, or None when some tail would exceed d.
    A tight match of length o survives iff the next letter equals
    d.letter(o); emitting 1 always opens a fresh match of length 1.
    """
    out = set()
    for o in offsets:
        dc = d.letter(o)
        if c > dc:
            return None
        if c == dc:
            out.add(_canon_offset(o + 1, pre_len, per_len))
    if c == "1":
        out.add(_canon_offset(1, pre_len, per_len))
    return frozenset(out)


def max_admissible_below(target: EPSeq, d: EPSeq) -> EPSeq:
    """Largest admissible sequence lexicographically at most target.

    Follows target while its prefix stays admissible; at the first
    violation (necessarily on a 1) that letter becomes 0, after which the
    letterwise-greedy continuation is maximal, and a repeated offset state
    closes the eventual period exactly.
    """
    pre_len, per_len = len(d.pre), len(d.per)
    tpre, tper = len(target.pre), len(target.per)
    offsets = frozenset()
    emitted: list[str] = []
    seen: dict = {}
    i = 0
    while True:
        if i >= tpre:
            key = (offsets, (i - tpre) % tper)
            if key in seen:
                return target
            seen[key] = i
        stepped = _step_offsets(offsets, target.letter(i), d, pre_len, per_len)
        if stepped is None:
            break
        emitted.append(target.letter(i))
        offsets = stepped
        i += 1
    offsets = _step_offsets(offsets, "0", d, pre_len, per_len)
    emitted.append("0")
    greedy_seen = {offsets: len(emitted)}
    while True:
        stepped = _step_offsets(offsets, "1", d, pre_len, per_len)
        if stepped is None:
            stepped = _step_offsets(offsets, "0", d, pre_len, per_len)
            emitted.append("0")
        else:
            emitted.append("1")
        offsets = stepped
        if offsets in greedy_seen:
            j = greedy_seen[offsets]
            return EPSeq("".join(emitted[:j]), "".join(emitted[j:]))
        greedy_seen[offsets] = len(emitted)


def preimage_depth(d: EPSeq) -> int:
    """The n with (1 0^n)^inf <= d < (1 0^(n-1))^inf.

    Measures how many 0s can front-run a 1 in an admissible sequence;
    equivalently the number of inverse branches of 0 available below the
    hole constructions.  Always a positive integer for a valid d.
    """
    check_expansion_of_one(d)
    n = 1
    while d < EPSeq.periodic("1" + "0" * n):
        n += 1
    return n


@dataclass(frozen=True)
class BetaContext:
    """A base beta described exactly by the expansion d of the point 1."""

    d: EPSeq

    def __post_init__(self) -> None:
        check_expansion_of_one(self.d)

    @classmethod
    def parse(cls, text: str) -> "BetaContext":
        return cls(EPSeq.parse(text))

    @property
    def beta(self) -> mpmath.mpf:
        return beta_of_d(self.d)

    def admits(self, x: EPSeq) -> bool:
        return is_admissible(x, self.d)

    def value(self, x: EPSeq) -> mpmath.mpf:
        return seq_value(x, self.beta)

    def compare_values(self, x: EPSeq, y: EPSeq) -> int:
        return value_compare(x, y, self.d)

    def depth(self) -> int:
        return preimage_depth(self.d)

    def __str__(self) -> str:
        return f"BetaContext(d={self.d})"
