"""Region geometry: windows, width bounds, boundary teeth, rasters."""

from fractions import Fraction

import pytest

from betahole import decide
from betahole.beta_shift import BetaContext, greedy_digits, seq_value
from betahole.farey import balanced_pair
from betahole.pairs import Balanced, ExtremalPair, farey_descendants
from betahole.regions import (
    CODES,
    D0_ONLY,
    D1_ONLY,
    D2,
    OUTSIDE,
    PGM_SHADES,
    UNKNOWN,
    EmptyRegion,
    RegionCaps,
    RegionMap,
    boundary,
    c_bounds,
    i_beta,
    r_beta,
    raster,
    raster_pgm,
)
from betahole.staircase import critical_slope
from betahole.words import EPSeq

from helpers import polyline_distance

P = EPSeq.parse
GOLDEN = BetaContext.parse("(10)")
CTX4 = BetaContext.parse("(1100)")
D8 = BetaContext.parse("(10010000)")
TETRA = BetaContext.parse("(1110)")

SMALL = RegionCaps(q_cap=8, tree_depth=4, count_cap=3, desc_depth=2, desc_q=3)
D8CAPS = RegionCaps(q_cap=12, tree_depth=3, count_cap=3, desc_depth=1, desc_q=3)

F = Fraction


@pytest.fixture(scope="module")
def rmap1100():
    return RegionMap(CTX4, SMALL)


@pytest.fixture(scope="module")
def rmapd8():
    return RegionMap(D8, D8CAPS)


def corners_of(rect):
    return [
        (str(getattr(rect, f).seq), float(getattr(rect, f).value))
        for f in ("x_lo", "x_hi", "y_lo", "y_hi")
    ]


WINDOWS = [
    ("(10)", [("0(01)", 0.381966), ("(01)", 0.618034),
              ("(01)", 0.618034), ("(10)", 1.0)]),
    ("(1100)", [("0(01)", 0.274015), ("(0110)", 0.569840),
                ("(01)", 0.480863), ("(10)", 0.843855)]),
    ("(10010000)", [("0(0001)", 0.222647), ("(01001000)", 0.700742),
                    ("(0001)", 0.317731), ("(1000)", 0.923389)]),
    ("(1110)", [("0(0111)", 0.269143), ("(0111)", 0.518790),
                ("(0111)", 0.518790), ("(1011)", 0.787933)]),
]


@pytest.mark.parametrize("dtext,want", WINDOWS)
def test_i_beta_frozen(dtext, want):
    got = corners_of(i_beta(BetaContext.parse(dtext)))
    for (gseq, gval), (wseq, wval) in zip(got, want):
        assert gseq == wseq
        assert gval == pytest.approx(wval, abs=5e-6)


def test_r_beta_empty_when_no_plateau_interior():
    assert isinstance(r_beta(GOLDEN), EmptyRegion)
    assert isinstance(r_beta(TETRA), EmptyRegion)


POCKETS = [
    ("(1100)", [("0(01)", 0.274015), ("(0011)", 0.324718),
                ("(01)", 0.480863), ("(0110)", 0.569840)]),
    ("(10010000)", [("0(0001)", 0.222647), ("(00001001)", 0.241119),
                    ("(0001)", 0.317731), ("(00010010)", 0.344092)]),
]


@pytest.mark.parametrize("dtext,want", POCKETS)
def test_r_beta_frozen(dtext, want):
    got = corners_of(r_beta(BetaContext.parse(dtext)))
    for (gseq, gval), (wseq, wval) in zip(got, want):
        assert gseq == wseq
        assert gval == pytest.approx(wval, abs=5e-6)


@pytest.mark.parametrize("dtext", ["(1100)", "(10010000)"])
def test_r_beta_sits_inside_i_beta(dtext):
    ctx = BetaContext.parse(dtext)
    ib, rb = i_beta(ctx), r_beta(ctx)
    assert float(ib.x_lo.value) <= float(rb.x_lo.value)
    assert float(rb.x_hi.value) <= float(ib.x_hi.value)
    assert float(ib.y_lo.value) <= float(rb.y_lo.value)
    assert float(rb.y_hi.value) <= float(ib.y_hi.value)


def test_c_bounds_golden_frozen():
    c0, c1, c2 = c_bounds(GOLDEN)
    assert c0 == pytest.approx(0.3819660112501051, abs=1e-9)
    assert c1 == pytest.approx(0.2360679774997897, abs=1e-9)
    assert c2 == pytest.approx(0.2360679774997897, abs=1e-9)


@pytest.mark.parametrize("dtext", ["(10)", "(1100)", "(10010000)", "(1110)"])
def test_c_bounds_formulas(dtext):
    ctx = BetaContext.parse(dtext)
    c0, c1, c2 = c_bounds(ctx)
    beta = float(ctx.beta)
    n = ctx.depth()
    assert c0 == pytest.approx(
        beta ** (n - 1) * (beta - 1.0) / (beta ** (n + 1) - 1.0), abs=1e-12)
    assert c1 == pytest.approx(c2, abs=1e-12)
    assert c2 == pytest.approx((beta - 1.0) / beta**2, abs=1e-12)
    # the top balanced pair swaps its leading 01 for 10, so its near
    # corner realises the level-2 cap exactly
    g = critical_slope(ctx.d).value
    s, t = balanced_pair(g)
    assert s[:2] == "01" and t[:2] == "10" and s[2:] == t[2:]
    si = float(seq_value(EPSeq("", s), ctx.beta))
    tsi = float(seq_value(EPSeq(t, s), ctx.beta))
    assert tsi - si == pytest.approx(c2, abs=1e-12)
    if g == F(1, n + 1):
        # pure power families stretch the far corner to the level-0 cap
        ti = float(seq_value(EPSeq("", t), ctx.beta))
        assert ti - si == pytest.approx(c0, abs=1e-12)


def test_corner_widths_bounded_and_attained(rmap1100):
    c0, _, c2 = c_bounds(CTX4)
    w0max = w2max = 0.0
    for rec in rmap1100.records:
        s, t = rec.pair.s, rec.pair.t
        si = float(seq_value(EPSeq("", s), CTX4.beta))
        ti = float(seq_value(EPSeq("", t), CTX4.beta))
        tsi = float(seq_value(EPSeq(t, s), CTX4.beta))
        assert ti - si <= c0 + 1e-9
        assert tsi - si <= c2 + 1e-9
        w0max = max(w0max, ti - si)
        w2max = max(w2max, tsi - si)
    assert w0max == pytest.approx(c0, abs=1e-9)
    assert w2max == pytest.approx(c2, abs=1e-9)


PROBES = [
    (0.49, 0.70, D2),
    (0.49, 0.80, D0_ONLY),
    (0.50, 0.90, OUTSIDE),
    (0.30, 0.52, OUTSIDE),
    (0.62, 0.70, D2),
    (0.45, 0.47, D2),
    (0.90, 0.95, D2),
    (0.05, 0.40, D2),
    (0.29, 0.90, OUTSIDE),
    (0.55, 0.74, D0_ONLY),
    (0.39188, 0.60848, D1_ONLY),
    (0.56753, 0.72758, D1_ONLY),
]


@pytest.mark.parametrize("a,b,want", PROBES)
def test_classify_point_frozen(rmap1100, a, b, want):
    assert rmap1100.classify(a, b) == want


@pytest.mark.parametrize("a,b", [(-0.1, 0.5), (0.5, 0.5), (0.5, 1.0), (0.6, 0.2)])
def test_classify_rejects_bad_holes(rmap1100, a, b):
    with pytest.raises(ValueError):
        rmap1100.classify(a, b)


def test_labels_stack_monotonically_in_b(rmap1100):
    rank = {D2: 3, D1_ONLY: 2, D0_ONLY: 1, OUTSIDE: 0}
    ib = i_beta(CTX4)
    x0, x1 = float(ib.x_lo.value), float(ib.x_hi.value)
    y0, y1 = float(ib.y_lo.value), float(ib.y_hi.value)
    for i in range(16):
        a = x0 + (x1 - x0) * (i + 0.5) / 16
        prev = 3
        for j in range(16):
            b = y0 + (y1 - y0) * (j + 0.5) / 16
            if b <= a:
                continue
            lab = rmap1100.classify(a, b)
            if lab == UNKNOWN:
                continue
            assert rank[lab] <= prev
            prev = rank[lab]


def test_boundary_polylines_monotone(rmap1100, rmapd8):
    kinds_allowed = {
        "d0": {"plateau_right", "riser_bottom", "riser_top"},
        "d1": {"jump_top", "plateau_left", "plateau_right"},
        "d2": {"jump_top", "plateau_left", "plateau_right"},
    }
    for ctx, rmap in ((CTX4, rmap1100), (D8, rmapd8)):
        for which in ("d0", "d1", "d2"):
            poly = boundary(ctx, which, region_map=rmap)
            cs = poly.corners
            assert cs, which
            assert {c.kind for c in cs} <= kinds_allowed[which]
            for c, cnext in zip(cs, cs[1:]):
                assert float(c.a.value) <= float(cnext.a.value) + 1e-12
                assert float(c.b.value) <= float(cnext.b.value) + 1e-12


def test_boundary_truncated_family_edge(rmapd8):
    # the shift-1 quarter family is cut at 1/beta and jumps to its far corner
    inv_beta = 1.0 / float(D8.beta)
    d0 = boundary(D8, "d0", region_map=rmapd8)
    hits = [c for c in d0.corners if abs(float(c.a.value) - inv_beta) < 1e-9]
    assert [(str(c.a.seq), str(c.b.seq), c.kind) for c in hits] == [
        ("(01001000)", "(1000)", "plateau_right")
    ]
    d2 = boundary(D8, "d2", region_map=rmapd8)
    hits = [c for c in d2.corners if abs(float(c.a.value) - inv_beta) < 1e-9]
    assert [(str(c.a.seq), str(c.b.seq), c.kind) for c in hits] == [
        ("(01001000)", "10(0001)", "plateau_right"),
        ("(01001000)", "(1000)", "jump_top"),
    ]
    assert hits[0].b.value == pytest.approx(0.856760, abs=5e-6)
    assert hits[1].b.value == pytest.approx(0.923389, abs=5e-6)


def test_descendant_tiles_cover_top_window():
    """Depth-three substitution tiles fill 99% of the top plateau."""
    base = ExtremalPair("01", "10")
    si = float(seq_value(EPSeq("", "01"), CTX4.beta))
    edge = float(seq_value(EPSeq("0", "1100"), CTX4.beta))
    rats = [F(p, q) for q in range(2, 6) for p in range(1, q)
            if F(p, q).denominator == q]
    chains = [()]
    frontier = [()]
    for _ in range(3):
        frontier = [c + (r,) for c in frontier for r in rats]
        chains.extend(frontier)
    tiles = []
    for c in chains:
        dp = farey_descendants(base, c)
        lo = float(seq_value(EPSeq("", dp.s), CTX4.beta))
        hi = float(seq_value(EPSeq(dp.s + dp.t, dp.s), CTX4.beta))
        lo, hi = max(lo, si), min(hi, edge)
        if hi > lo:
            tiles.append((lo, hi))
    tiles.sort()
    covered, cursor = 0.0, si
    for lo, hi in tiles:
        if hi <= cursor:
            continue
        covered += hi - max(lo, cursor)
        cursor = hi
    assert covered / (edge - si) >= 0.99


def test_shifted_families_scale_by_beta(rmapd8):
    groups = {}
    for rec in rmapd8.records:
        prov = rec.pair.provenance
        if isinstance(prov, Balanced):
            groups.setdefault(prov.gamma, {})[prov.shift] = rec.pair
    beta = float(D8.beta)
    seen = 0
    for shifts in groups.values():
        for k, pair in shifts.items():
            if k + 1 not in shifts:
                continue
            lo = float(seq_value(EPSeq("", pair.s), D8.beta))
            lo_next = float(seq_value(EPSeq("", shifts[k + 1].s), D8.beta))
            assert lo / lo_next == pytest.approx(beta, abs=1e-9)
            seen += 1
    assert seen >= 2


def test_raster_matches_classify(rmap1100):
    ib = i_beta(CTX4)
    grid = raster(CTX4, ib, 5, 4, region_map=rmap1100)
    assert len(grid) == 4 and all(len(row) == 5 for row in grid)
    x0, x1 = float(ib.x_lo.value), float(ib.x_hi.value)
    y0, y1 = float(ib.y_lo.value), float(ib.y_hi.value)
    for i in range(4):
        b = y1 - (y1 - y0) * (i + 0.5) / 4
        for j in range(5):
            a = x0 + (x1 - x0) * (j + 0.5) / 5
            want = CODES[D2] if a >= b else CODES[rmap1100.classify(a, b)]
            assert grid[i][j] == want


def test_raster_single_cell_is_classify(rmap1100):
    rb = r_beta(CTX4)
    grid = raster(CTX4, rb, 1, 1, region_map=rmap1100)
    a = (float(rb.x_lo.value) + float(rb.x_hi.value)) / 2
    b = (float(rb.y_lo.value) + float(rb.y_hi.value)) / 2
    assert grid == [[CODES[rmap1100.classify(a, b)]]]


def test_raster_deterministic():
    caps = RegionCaps(q_cap=5, tree_depth=2, count_cap=2, desc_depth=1,
                      desc_q=3)
    ib = i_beta(CTX4)
    one = raster(CTX4, ib, 8, 8, caps=caps)
    two = raster(CTX4, ib, 8, 8, caps=caps)
    assert one == two


def test_raster_validation(rmap1100):
    ib = i_beta(CTX4)
    with pytest.raises(ValueError):
        raster(CTX4, ib, 0, 4, region_map=rmap1100)
    big = r_beta(CTX4)
    shifted = type(big)(big.x_lo, big.x_hi, big.y_lo,
                        type(big.y_hi)(None, 1.7))
    with pytest.raises(ValueError):
        raster(CTX4, shifted, 2, 2, region_map=rmap1100)


def test_raster_pgm_frozen():
    assert raster_pgm([[0, 1, 2], [3, 9, 0]]) == (
        "P2\n3 2\n255\n0 192 255\n64 128 0\n"
    )
    assert PGM_SHADES == {0: 0, 1: 192, 2: 255, 3: 64, 9: 128}


def test_region_caps_validated():
    for kw in ({"q_cap": 0}, {"tree_depth": 0}, {"count_cap": -1},
               {"desc_depth": 0}):
        with pytest.raises(ValueError):
            RegionCaps(**kw)


def test_quarter_family_blocks(rmapd8):
    """The two leading pocket families show up as staircase blocks."""
    rb = r_beta(D8)
    grid = raster(D8, rb, 64, 64, region_map=rmapd8)
    x0, x1 = float(rb.x_lo.value), float(rb.x_hi.value)
    y0, y1 = float(rb.y_lo.value), float(rb.y_hi.value)

    def cells(ax0, ax1, by0, by1):
        out = []
        for i in range(64):
            b = y1 - (y1 - y0) * (i + 0.5) / 64
            if not by0 < b < by1:
                continue
            for j in range(64):
                a = x0 + (x1 - x0) * (j + 0.5) / 64
                if ax0 < a < ax1:
                    out.append(grid[i][j])
        return out

    # underside of the 2/7 family: live region, mostly level 2
    band = cells(0.2272, 0.2410, 0.3180, 0.3235)
    assert band and CODES[OUTSIDE] not in band
    assert band.count(CODES[D2]) / len(band) >= 0.8
    # underside of the 3/11 family
    band = cells(0.2238, 0.2270, 0.3180, 0.3197)
    assert band and CODES[OUTSIDE] not in band
    # between the 3/11 top and the 2/7 floor nothing survives
    strip = cells(0.2238, 0.2270, 0.3245, 0.3435)
    assert strip and set(strip) == {CODES[OUTSIDE]}
    # left of the 3/11 family the window is dead or undecided
    edge = cells(0.2227, 0.2236, 0.3180, 0.3440)
    assert edge and set(edge) <= {CODES[OUTSIDE], CODES[UNKNOWN]}


def test_classify_agrees_with_automaton(rmap1100):
    """Away from the boundary the chart and the decision engine agree."""
    verdict_for = {
        D2: decide.UNCOUNTABLE,
        D1_ONLY: decide.UNCOUNTABLE,
        D0_ONLY: decide.COUNTABLE,
        OUTSIDE: decide.EMPTY,
    }
    ib = i_beta(CTX4)
    x0, x1 = float(ib.x_lo.value), float(ib.x_hi.value)
    y0, y1 = float(ib.y_lo.value), float(ib.y_hi.value)
    polys = [boundary(CTX4, w, region_map=rmap1100).corners
             for w in ("d0", "d1", "d2")]
    checked = 0
    for i in range(12):
        a = x0 + (x1 - x0) * (i + 0.5) / 12
        for j in range(12):
            b = y0 + (y1 - y0) * (j + 0.5) / 12
            if b <= a:
                continue
            if min(polyline_distance((a, b), cs) for cs in polys) <= 1e-3:
                continue
            lab = rmap1100.classify(a, b)
            assert lab != UNKNOWN
            sa = EPSeq(greedy_digits(CTX4.beta, a, 60), "0")
            sb = EPSeq(greedy_digits(CTX4.beta, b, 60), "0")
            got = decide.recurrent_kind(
                decide.classify(CTX4.d, decide.HoleSpec(sa, sb)))
            assert got == verdict_for[lab], (a, b, lab, got)
            checked += 1
    assert checked >= 100
