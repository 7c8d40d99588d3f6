"""Exact combinatorics on finite binary words and eventually periodic 0-1 sequences.

Finite words are plain Python strings over the alphabet {0, 1}.  Infinite
sequences that are eventually periodic are represented exactly by EPSeq,
which stores a preperiod and a repeating block in canonical form, so that
equality, lexicographic comparison and shifting are all decidable in finite
time.  Lexicographic order on sequences is written with the usual comparison
operators; the module-level constants LESS, EQUAL, GREATER name the three
outcomes of a comparison.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

LESS, EQUAL, GREATER = -1, 0, 1

_ALPHABET = frozenset("01")
_SEQ_RE = re.compile(r"^([01]*)\(([01]+)\)$")


class NoSuchRotationError(ValueError):
    """No cyclic permutation of the word starts with the requested prefix."""


def check_word(w: str) -> str:
    """Validate that w is a binary string and return it unchanged."""
    if not isinstance(w, str) or not set(w) <= _ALPHABET:
        raise ValueError(f"not a binary word: {w!r}")
    return w


def primitive_root(w: str) -> str:
    """Shortest u with w == u^k.

    Uses the classical trick: the least positive index where w occurs in
    w + w is the primitive period.
    """
    check_word(w)
    if not w:
        return w
    p = (w + w).find(w, 1)
    return w[:p]


def is_primitive(w: str) -> bool:
    return len(w) > 0 and primitive_root(w) == w


def rotations(w: str) -> list[str]:
    """All cyclic permutations of w, starting position 0 first."""
    check_word(w)
    d = w + w
    return [d[i : i + len(w)] for i in range(len(w))]


def min_rotation(w: str) -> str:
    return min(rotations(w))


def max_rotation(w: str) -> str:
    return max(rotations(w))


def cyclic_extreme(w: str, prefix: str, mode: str = "max") -> str:
    """Extremal rotation of w among those starting with the given prefix.

    mode is "max" or "min".  Raises NoSuchRotationError when no rotation
    of w begins with prefix.
    """
    check_word(prefix)
    if mode not in ("max", "min"):
        raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")
    candidates = [r for r in rotations(w) if r.startswith(prefix)]
    if not candidates:
        raise NoSuchRotationError(
            f"no rotation of {w!r} starts with {prefix!r}"
        )
    return max(candidates) if mode == "max" else min(candidates)


def is_balanced(w: str) -> bool:
    """Whether every pair of equal-length factors differs by at most one 1.

    Checked per window length with prefix sums, so O(len(w)^2) overall.
    """
    check_word(w)
    n = len(w)
    acc = [0] * (n + 1)
    for i, c in enumerate(w):
        acc[i + 1] = acc[i] + (c == "1")
    for k in range(1, n):
        counts = [acc[i + k] - acc[i] for i in range(n - k + 1)]
        if max(counts) - min(counts) > 1:
            return False
    return True


def is_cyclically_balanced(w: str) -> bool:
    """Balance of w read as a cyclic word.

    Checks the doubled word, whose factors cover every cyclic factor of w
    and every factor of the periodic repetition up to length 2*len(w);
    for periodic sequences an imbalance always shows up at that scale.
    """
    check_word(w)
    return is_balanced(w + w) if w else True


def _canonical(pre: str, per: str) -> tuple[str, str]:
    per = primitive_root(per)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1] + per[:-1]
    return pre, per


@dataclass(frozen=True)
class EPSeq:
    """Eventually periodic 0-1 sequence pre + per + per + ...

    Instances are canonical: per is primitive and the preperiod is as short
    as possible, so dataclass equality coincides with equality of the
    underlying infinite sequences.  The text form is "PRE(PER)".
    """

    pre: str
    per: str

    def __post_init__(self) -> None:
        check_word(self.pre)
        check_word(self.per)
        if not self.per:
            raise ValueError("period block must be nonempty")
        pre, per = _canonical(self.pre, self.per)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def parse(cls, text: str) -> "EPSeq":
        """Parse the "PRE(PER)" text form, e.g. "01(10)" or "(10010000)"."""
        m = _SEQ_RE.match(text.strip())
        if not m:
            raise ValueError(f"malformed sequence literal: {text!r}")
        return cls(m.group(1), m.group(2))

    @classmethod
    def periodic(cls, w: str) -> "EPSeq":
        """The purely periodic sequence w^inf."""
        return cls("", w)

    @classmethod
    def zero(cls) -> "EPSeq":
        return cls("", "0")

    def __str__(self) -> str:
        return f"{self.pre}({self.per})"

    def is_zero(self) -> bool:
        return self.per == "0" and not self.pre

    def ends_in_zeros(self) -> bool:
        """True when the sequence has form u 1 0^inf (or is identically 0)."""
        return self.per == "0"

    def letter(self, i: int) -> str:
        if i < 0:
            raise IndexError("sequence index must be nonnegative")
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, n: int) -> str:
        """First n letters as a finite word."""
        if n <= len(self.pre):
            return self.pre[:n]
        reps = -(-(n - len(self.pre)) // len(self.per))
        return (self.pre + self.per * reps)[:n]

    def shift(self, n: int = 1) -> "EPSeq":
        """Drop the first n letters."""
        if n < 0:
            raise ValueError("cannot shift by a negative amount")
        if n <= len(self.pre):
            return EPSeq(self.pre[n:], self.per)
        k = (n - len(self.pre)) % len(self.per)
        return EPSeq("", self.per[k:] + self.per[:k])

    def shifts(self) -> list["EPSeq"]:
        """Every distinct shifted sequence (there are finitely many)."""
        seen: dict[EPSeq, None] = {}
        for i in range(len(self.pre) + len(self.per)):
            seen.setdefault(self.shift(i))
        return list(seen)

    def compare(self, other: "EPSeq") -> int:
        """Three-way lexicographic comparison, exact for infinite sequences.

        Two eventually periodic sequences that agree beyond both preperiods
        for a full least common multiple of the periods agree everywhere.
        """
        n = max(len(self.pre), len(other.pre)) + math.lcm(
            len(self.per), len(other.per)
        )
        a, b = self.prefix(n), other.prefix(n)
        if a == b:
            return EQUAL
        return LESS if a < b else GREATER

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, EPSeq):
            return NotImplemented
        return self.compare(other) == LESS

    def __le__(self, other: object) -> bool:
        if not isinstance(other, EPSeq):
            return NotImplemented
        return self.compare(other) != GREATER

    def __gt__(self, other: object) -> bool:
        if not isinstance(other, EPSeq):
            return NotImplemented
        return self.compare(other) == GREATER

    def __ge__(self, other: object) -> bool:
        if not isinstance(other, EPSeq):
            return NotImplemented
        return self.compare(other) != LESS
