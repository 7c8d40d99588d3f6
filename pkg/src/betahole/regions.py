"""Geometry of the hole-parameter square.

Classifies hole positions (a, b) by how much of the shift survives the
hole: level 0 holes keep a nonzero survivor, level 1 holes keep
uncountably many, level 2 holes additionally meet only finitely many of
the periodic-orbit depths.  Each level is bounded from above by a
staircase frontier assembled from the maximal pair inventory; the middle
frontier is refined inside each pair's window by its descendant pairs.
Caps control resolution only: structure the enumerated pairs cannot
settle is reported unknown, never guessed.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from betahole.beta_shift import (
    BetaContext,
    is_admissible,
    max_admissible_below,
)
from betahole.farey import standard_word
from betahole.pairs import (
    MaximalPairRecord,
    enumerate_maximal_pairs,
    farey_descendants,
    slope_window,
)
from betahole.staircase import critical_slope
from betahole.words import EPSeq, min_rotation

D2 = "D2"
D1_ONLY = "D1only"
D0_ONLY = "D0only"
OUTSIDE = "Outside"
UNKNOWN = "UnknownNearBoundary"

CODES = {OUTSIDE: 0, D0_ONLY: 1, D1_ONLY: 2, D2: 3, UNKNOWN: 9}
PGM_SHADES = {0: 0, 1: 192, 2: 255, 3: 64, 9: 128}

TOL = 1e-9


@dataclass(frozen=True)
class PointValue:
    """A coordinate kept symbolic when possible, numeric always."""

    seq: Optional[EPSeq]
    value: float


def point(ctx: BetaContext, x) -> PointValue:
    """Coerce a sequence, a number, or a PointValue into a PointValue."""
    if isinstance(x, PointValue):
        return x
    if isinstance(x, EPSeq):
        return PointValue(x, float(ctx.value(x)))
    return PointValue(None, float(x))


def eval_point(ctx: BetaContext, x) -> float:
    return point(ctx, x).value


@dataclass(frozen=True)
class Rect:
    x_lo: PointValue
    x_hi: PointValue
    y_lo: PointValue
    y_hi: PointValue

    def __post_init__(self):
        if self.x_lo.value > self.x_hi.value or self.y_lo.value > self.y_hi.value:
            raise ValueError("rectangle sides must be ordered")


@dataclass(frozen=True)
class EmptyRegion:
    """Marker for a window that degenerates to nothing."""


def _prepend(letter: str, x: EPSeq) -> EPSeq:
    return EPSeq(letter + x.pre, x.per)


def inf_x(ctx: BetaContext) -> EPSeq:
    """Least point of the balanced family at the critical slope."""
    g = critical_slope(ctx.d).value
    return EPSeq.periodic(min_rotation(standard_word(g)))


def i_beta(ctx: BetaContext) -> Rect:
    """Window of hole positions not already settled by the easy zones."""
    u = inf_x(ctx)
    return Rect(
        point(ctx, _prepend("0", u)),
        point(ctx, _prepend("0", ctx.d)),
        point(ctx, u),
        point(ctx, _prepend("1", u)),
    )


def r_beta(ctx: BetaContext):
    """Sub-window below every balanced pair, or EmptyRegion when absent.

    The finite-word corners 0^n 1 and 0^(n-1) 1 are read as the points
    0^(n+1) d and 0^n d, which is what collapses the window exactly when
    the expansion of one is itself a periodic balanced word.
    """
    g = critical_slope(ctx.d).value
    n = slope_window(g)
    u = inf_x(ctx)
    d = ctx.d
    x_lo = _prepend("0", u)
    x_hi = EPSeq("0" * (n + 1) + d.pre, d.per)
    if x_lo == x_hi:
        return EmptyRegion()
    return Rect(
        point(ctx, x_lo),
        point(ctx, x_hi),
        point(ctx, u),
        point(ctx, EPSeq("0" * n + d.pre, d.per)),
    )


def c_bounds(ctx: BetaContext) -> tuple:
    """Width caps per level: a hole of width >= C_i never lies in level i."""
    n = ctx.depth()
    b = float(ctx.beta)
    c0 = b ** (n - 1) * (b - 1.0) / (b ** (n + 1) - 1.0)
    c1 = (b - 1.0) / (b * b)
    return (c0, c1, c1)


@dataclass(frozen=True)
class RegionCaps:
    """Resolution knobs for frontier assembly.

    Larger caps resolve more of the fine structure; whatever stays
    unresolved classifies as unknown.
    """

    q_cap: int = 12
    tree_depth: int = 4
    count_cap: int = 4
    desc_depth: int = 2
    desc_q: int = 4

    def __post_init__(self):
        for name in ("q_cap", "tree_depth", "count_cap", "desc_depth", "desc_q"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


@dataclass(frozen=True)
class Corner:
    a: PointValue
    b: PointValue
    pair: MaximalPairRecord
    kind: str


@dataclass(frozen=True)
class BoundaryPolyline:
    which: str
    corners: tuple


@dataclass(frozen=True)
class _Tooth:
    # exact: the frontier equals height on [a_lo, a_hi]; otherwise the
    # tooth only certifies frontier >= height there.
    a_lo: float
    a_hi: float
    height: float
    h_seq: Optional[EPSeq]
    exact: bool


class _Staircase:
    """Monotone frontier known exactly on tooth plateaus.

    Between teeth the frontier is only bracketed: at least the greatest
    height certified to the left, at most the height of the next exact
    plateau to the right.
    """

    def __init__(self, teeth):
        tt = sorted(teeth, key=lambda t: (t.a_lo, t.a_hi))
        self.teeth = tt
        self._starts = [t.a_lo for t in tt]
        run = (None, None)
        self._floor = []
        for t in tt:
            if run[0] is None or t.height >= run[0]:
                run = (t.height, t.h_seq)
            self._floor.append(run)
        ex = sorted((t for t in tt if t.exact), key=lambda t: (t.a_hi, t.a_lo))
        self._exact = ex
        self._ends = [t.a_hi for t in ex]
        self._ceil = [(None, None)] * (len(ex) + 1)
        run = (None, None)
        for k in range(len(ex) - 1, -1, -1):
            if run[0] is None or ex[k].height <= run[0]:
                run = (ex[k].height, ex[k].h_seq)
            self._ceil[k] = run

    def bracket(self, a: float):
        i = bisect_right(self._starts, a)
        floor = self._floor[i - 1] if i else (None, None)
        k = bisect_left(self._ends, a)
        ceil = self._ceil[k]
        plateau = None
        for t in self._exact[k:k + 4]:
            if t.a_lo <= a <= t.a_hi:
                plateau = t
                break
        return floor, ceil, plateau

    def query(self, a: float, b_val: float, b_seq=None, tol: float = TOL):
        """True/False when b is certainly below/above the frontier, else None."""
        (fh, fseq), (ch, _), plateau = self.bracket(a)
        if plateau is not None:
            h, hseq = plateau.height, plateau.h_seq
            if b_val < h - tol:
                return True
            if b_val > h + tol:
                # a jump column shares this a; stay undecided inside it
                if fh is not None and fh > h + tol and b_val < fh + tol:
                    return None
                return False
            if b_seq is not None and hseq is not None:
                return b_seq.compare(hseq) <= 0
            return None
        if fh is not None:
            if b_val < fh - tol:
                return True
            if (abs(b_val - fh) <= tol and b_seq is not None
                    and fseq is not None and b_seq.compare(fseq) <= 0):
                return True
        if ch is not None and b_val > ch + tol:
            return False
        return None


def _adm(x: EPSeq, d: EPSeq) -> EPSeq:
    return x if is_admissible(x, d) else max_admissible_below(x, d)


def _ratio_chains(depth: int, qmax: int):
    ratios = sorted(Fraction(p, q) for q in range(2, qmax + 1)
                    for p in range(1, q) if gcd(p, q) == 1)
    chains = [()]
    level = [()]
    for _ in range(depth):
        level = [c + (r,) for c in level for r in ratios]
        chains.extend(level)
    return chains


class RegionMap:
    """Point classifier backed by the enumerated frontier staircases."""

    def __init__(self, ctx: BetaContext, caps: Optional[RegionCaps] = None):
        self.ctx = ctx
        self.caps = caps if caps is not None else RegionCaps()
        self.window = i_beta(ctx)
        self.inf_x = point(ctx, inf_x(ctx))
        self.inv_beta = self.window.x_hi
        self.zero_inf_x = self.window.x_lo
        self.records = enumerate_maximal_pairs(
            ctx.d, q_cap=self.caps.q_cap, tree_depth=self.caps.tree_depth,
            count_cap=self.caps.count_cap)
        self._tiles = {}
        self._build()

    def _desc_tiles(self, rec: MaximalPairRecord):
        """Descendant plateaus (a_lo, a_hi, height) inside the record window.

        Each chain of Farey ratios yields a descendant pair whose own
        window tiles part of [s^inf, right edge]; the empty chain is the
        record itself.  Anything inadmissible is truncated downward, and
        tiles past the record's right edge are dropped.
        """
        got = self._tiles.get(rec)
        if got is not None:
            return got
        d = self.ctx.d
        pair, edge = rec.pair, rec.right_edge()
        chains = _ratio_chains(self.caps.desc_depth, self.caps.desc_q)
        si = pair.s_inf()
        out = []
        seen = set()
        for c in chains:
            try:
                dp = farey_descendants(pair, c)
            except ValueError:
                continue
            dsi = dp.s_inf()
            if dsi in seen:
                continue
            seen.add(dsi)
            if not is_admissible(dsi, d):
                continue
            if dsi.compare(si) < 0 or dsi.compare(edge) >= 0:
                continue
            tile_hi = _adm(EPSeq(dp.s + dp.t, dp.s), d)
            if tile_hi.compare(edge) > 0:
                tile_hi = edge
            out.append((dsi, tile_hi, _adm(EPSeq(dp.t, dp.s), d)))
        out.sort(key=lambda row: row[0])
        tiles = tuple(out)
        self._tiles[rec] = tiles
        return tiles

    def _build(self):
        ctx, d = self.ctx, self.ctx.d
        t0, t1, t2 = [], [], []
        n = len(self.records)
        for k, rec in enumerate(self.records):
            pair, edge = rec.pair, rec.right_edge()
            si, ti = pair.s_inf(), pair.t_inf()
            ts = _adm(EPSeq(pair.t, pair.s), d)
            a_lo, a_hi = eval_point(ctx, si), eval_point(ctx, edge)
            h0, h2 = eval_point(ctx, ti), eval_point(ctx, ts)
            t0.append(_Tooth(a_lo, a_hi, h0, ti, True))
            t2.append(_Tooth(a_lo, a_hi, h2, ts, True))
            for lo, hi, h in self._desc_tiles(rec):
                t1.append(_Tooth(eval_point(ctx, lo), eval_point(ctx, hi),
                                 eval_point(ctx, h), h, True))
            if rec.truncated is not None:
                continue
            # past an admissible right corner the whole column below the
            # top of the window is inside level 2
            nxt = (eval_point(ctx, self.records[k + 1].pair.s_inf())
                   if k + 1 < n else self.inv_beta.value)
            if nxt > a_hi:
                t1.append(_Tooth(a_hi, nxt, h0, ti, False))
                t2.append(_Tooth(a_hi, nxt, h0, ti, False))
        self._stairs = (_Staircase(t0), _Staircase(t1), _Staircase(t2))

    def _cmp(self, p: PointValue, q: PointValue, tol: float = TOL):
        if p.value > q.value + tol:
            return 1
        if p.value < q.value - tol:
            return -1
        if p.seq is not None and q.seq is not None:
            return p.seq.compare(q.seq)
        return None

    def classify(self, a, b) -> str:
        pa = point(self.ctx, a)
        pb = point(self.ctx, b)
        if not 0.0 <= pa.value < pb.value < 1.0:
            raise ValueError(f"hole endpoints must satisfy 0 <= a < b < 1: "
                             f"({pa.value}, {pb.value})")
        big_a = self._cmp(pa, self.inv_beta)
        if big_a is not None and big_a > 0:
            return D2
        small_b = self._cmp(pb, self.inf_x)
        if small_b is not None and small_b < 0:
            return D2
        left_a = self._cmp(pa, self.zero_inf_x)
        if left_a is not None and left_a <= 0:
            if small_b is not None and small_b >= 0:
                return OUTSIDE
            return UNKNOWN
        in2 = self._stairs[2].query(pa.value, pb.value, pb.seq)
        if in2 is True:
            return D2
        if in2 is None:
            return UNKNOWN
        in1 = self._stairs[1].query(pa.value, pb.value, pb.seq)
        if in1 is True:
            return D1_ONLY
        if in1 is None:
            return UNKNOWN
        in0 = self._stairs[0].query(pa.value, pb.value, pb.seq)
        if in0 is True:
            return D0_ONLY
        if in0 is None:
            return UNKNOWN
        return OUTSIDE


def classify_point(ctx: BetaContext, a, b, caps: Optional[RegionCaps] = None,
                   region_map: Optional[RegionMap] = None) -> str:
    """Classify one hole; builds a fresh RegionMap unless one is passed."""
    rmap = region_map if region_map is not None else RegionMap(ctx, caps)
    return rmap.classify(a, b)


def boundary(ctx: BetaContext, which, caps: Optional[RegionCaps] = None,
             region_map: Optional[RegionMap] = None) -> BoundaryPolyline:
    """Frontier polyline for one level, corners sorted left to right.

    Level 0 and level 2 take three corners per maximal pair; level 1
    walks the descendant plateaus instead of the single pair plateau.
    Truncated records use their truncation point as the right edge.
    """
    w = str(which).lower()
    if w not in ("d0", "d1", "d2"):
        raise ValueError(f"unknown boundary selector: {which!r}")
    rmap = region_map if region_map is not None else RegionMap(ctx, caps)
    d = ctx.d
    corners = []
    for rec in rmap.records:
        pair, edge = rec.pair, rec.right_edge()
        si, ti = pair.s_inf(), pair.t_inf()
        ts = _adm(EPSeq(pair.t, pair.s), d)
        if w == "d0":
            corners.append(Corner(point(ctx, si), point(ctx, ts), rec,
                                  "riser_bottom"))
            corners.append(Corner(point(ctx, si), point(ctx, ti), rec,
                                  "riser_top"))
            corners.append(Corner(point(ctx, edge), point(ctx, ti), rec,
                                  "plateau_right"))
        elif w == "d2":
            corners.append(Corner(point(ctx, si), point(ctx, ts), rec,
                                  "plateau_left"))
            corners.append(Corner(point(ctx, edge), point(ctx, ts), rec,
                                  "plateau_right"))
            corners.append(Corner(point(ctx, edge), point(ctx, ti), rec,
                                  "jump_top"))
        else:
            for lo, hi, h in rmap._desc_tiles(rec):
                corners.append(Corner(point(ctx, lo), point(ctx, h), rec,
                                      "plateau_left"))
                corners.append(Corner(point(ctx, hi), point(ctx, h), rec,
                                      "plateau_right"))
            corners.append(Corner(point(ctx, edge), point(ctx, ti), rec,
                                  "jump_top"))
    corners.sort(key=lambda c: (c.a.value, c.b.value))
    return BoundaryPolyline(w, tuple(corners))


def raster(ctx: BetaContext, window: Rect, width: int, height: int,
           caps: Optional[RegionCaps] = None,
           region_map: Optional[RegionMap] = None):
    """Classification codes at cell centers; row 0 spans the window top.

    Cells whose center has a >= b hold an inverted, empty hole that
    spoils nothing, so they take the level-2 code directly.
    """
    if width < 1 or height < 1:
        raise ValueError("raster size must be at least 1x1")
    rmap = region_map if region_map is not None else RegionMap(ctx, caps)
    x0, x1 = window.x_lo.value, window.x_hi.value
    y0, y1 = window.y_lo.value, window.y_hi.value
    dx = (x1 - x0) / width
    dy = (y1 - y0) / height
    grid = []
    for i in range(height):
        b = y1 - (i + 0.5) * dy
        row = []
        for j in range(width):
            a = x0 + (j + 0.5) * dx
            if a >= b:
                row.append(CODES[D2])
            elif not 0.0 <= a < 1.0 or not b < 1.0:
                raise ValueError("raster window must sit inside the unit square")
            else:
                row.append(CODES[rmap.classify(a, b)])
        grid.append(row)
    return grid


def raster_pgm(grid) -> str:
    """Render a code grid as plain-text 8-bit greyscale (P2)."""
    h = len(grid)
    w = len(grid[0]) if h else 0
    lines = ["P2", f"{w} {h}", "255"]
    for row in grid:
        lines.append(" ".join(str(PGM_SHADES[c]) for c in row))
    return "\n".join(lines) + "\n"
