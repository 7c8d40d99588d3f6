"""Numbered end-to-end checks behind the verify subcommand.

Each criterion reruns a slice of the library against frozen expectations
and returns (ok, detail).  The checks are deterministic: random holes
come from a fixed seed, caps and tolerances are pinned here.
"""

import random
import time
from fractions import Fraction
from math import gcd, hypot

from .beta_shift import BetaContext, _step_offsets, greedy_digits, quasigreedy_of_one
from .decide import (COUNTABLE, EMPTY, UNCOUNTABLE, HoleSpec, bad_n,
                     brute_force_nonempty, classify, recurrent_kind, survives)
from .farey import balanced_pair, descendant_pair, standard_word
from .pairs import (Balanced, enumerate_maximal_pairs, farey_descendants,
                    rbeta_gammas, rbeta_tree_pairs, slope_window, verify_maximal)
from .regions import (CODES, D0_ONLY, D1_ONLY, D2, OUTSIDE, UNKNOWN, RegionCaps,
                      RegionMap, boundary, c_bounds, eval_point, i_beta, raster)
from .staircase import (critical_slope, descendant_words, periodic_contexts,
                        slope_vector, staircase_samples)
from .words import EPSeq, max_rotation

NAMES = {
    1: "worked examples",
    2: "region numerics",
    3: "staircase",
    4: "trichotomy",
    5: "transfer suite",
    6: "figures",
    7: "width bounds",
}

CONTEXTS = ["(10)", "(1100)", "(10010000)", "(1110)", "1(10)"]

FIGURE_CAPS = {
    "(1100)": RegionCaps(q_cap=13, tree_depth=6, count_cap=4,
                         desc_depth=2, desc_q=4),
    "(10010000)": RegionCaps(q_cap=18, tree_depth=6, count_cap=4,
                             desc_depth=2, desc_q=4),
}

VERDICT_FOR = {D2: UNCOUNTABLE, D1_ONLY: UNCOUNTABLE,
               D0_ONLY: COUNTABLE, OUTSIDE: EMPTY}

F = Fraction


def _seg_dist(p, q0, q1):
    px, py = p
    x0, y0 = q0
    x1, y1 = q1
    dx, dy = x1 - x0, y1 - y0
    den = dx * dx + dy * dy
    if den == 0.0:
        return hypot(px - x0, py - y0)
    t = ((px - x0) * dx + (py - y0) * dy) / den
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return hypot(px - (x0 + t * dx), py - (y0 + t * dy))


def _polyline_dist(p, pts):
    if not pts:
        return float("inf")
    if len(pts) == 1:
        return hypot(p[0] - pts[0][0], p[1] - pts[0][1])
    return min(_seg_dist(p, pts[k], pts[k + 1]) for k in range(len(pts) - 1))


def _products_admissible(s: str, t: str, d: EPSeq) -> bool:
    """Whether every infinite concatenation of the two blocks is admissible."""
    def step_block(state, w):
        cur = state
        for c in w:
            cur = _step_offsets(cur, c, d, len(d.pre), len(d.per))
            if cur is None:
                return None
        return cur

    start = frozenset()
    seen = {start}
    todo = [start]
    while todo:
        state = todo.pop()
        for w in (s, t):
            nxt = step_block(state, w)
            if nxt is None:
                return False
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return True


def _rotation_offset(s: str, t: str):
    for j in range(1, len(s)):
        if s[j:] + s[:j] == t:
            return j
    return None


def _hole_point(beta: float, x: float) -> EPSeq:
    return EPSeq(greedy_digits(beta, x, 60), "0")


def _check(fails, cond, msg):
    if not cond:
        fails.append(msg)


def _crit_worked_examples():
    t0 = time.perf_counter()
    fails = []
    qg = quasigreedy_of_one("11")
    _check(fails, qg == EPSeq("", "10"), f"quasigreedy of 11 gave {qg}")
    beta = float(BetaContext(qg).beta)
    _check(fails, abs(beta - 1.6180339887) <= 1e-9, f"beta {beta!r}")
    words = {F(1, 2): "10", F(1, 3): "100", F(2, 3): "110",
             F(2, 5): "10100", F(3, 5): "11010"}
    for g, w in words.items():
        got = max_rotation(standard_word(g))
        _check(fails, got == w, f"word at {g} gave {got}")
    bp = balanced_pair(F(2, 5))
    _check(fails, bp == ("01010", "10010"), f"pair at 2/5 gave {bp}")
    dp = descendant_pair(bp, F(1, 2))
    _check(fails, dp == ("0101010010", "1001001010"), f"descendant gave {dp}")
    d8 = EPSeq("", "10010000")
    sv = slope_vector(d8)
    _check(fails, critical_slope(d8).value == F(1, 4), "slope of d8")
    _check(fails, sv.entries == (F(1, 4), F(1, 2)), f"vector {sv.entries}")
    dw = descendant_words(sv.entries)
    _check(fails, dw == ("01001000", "10000100"), f"descendant words {dw}")
    gs = rbeta_gammas(F(1, 4), 2)[:2]
    _check(fails, gs == [F(2, 7), F(3, 11)], f"corner slopes {gs}")
    _check(fails, standard_word(F(2, 7)) == "0001001", "word at 2/7")
    n = slope_window(F(1, 4))
    mids = {F(2, 7): ("00001001", "00010010"),
            F(3, 11): ("000010001001", "000100010010")}
    for g, want in mids.items():
        recs = rbeta_tree_pairs(g, n, d8, 1)
        _check(fails, len(recs) == 1 and (recs[0].pair.s, recs[0].pair.t) == want,
               f"middle pair at {g}")
    edge = rbeta_tree_pairs(F(3, 11), n, d8, 1)[0].right_edge()
    want_edge = EPSeq("00001001"[:-1] + "0" + d8.pre, d8.per)
    _check(fails, edge == want_edge, f"truncated edge {edge}")
    from .pairs import is_extremal
    quad = [is_extremal("0011", "0110"), is_extremal("0110", "1001"),
            is_extremal("1001", "1100"), is_extremal("0110", "1100")]
    _check(fails, quad == [True, True, True, False], f"extremal quadruple {quad}")
    dt = time.perf_counter() - t0
    _check(fails, dt < 1.0, f"took {dt:.2f}s")
    if fails:
        return False, "; ".join(fails)
    return True, f"all symbolic values match ({dt:.2f}s)"


def _crit_region_numerics():
    t0 = time.perf_counter()
    fails = []
    d8 = EPSeq("", "10010000")
    ctx = BetaContext(d8)
    n = slope_window(critical_slope(d8).value)
    rects = {F(2, 7): (0.227, 0.245, 0.324, 0.344),
             F(3, 11): (0.2238, 0.227, 0.319, 0.324)}
    for g, (a0, a1, b0, b1) in rects.items():
        recs = rbeta_tree_pairs(g, n, d8, 6)
        lo_a = min(eval_point(ctx, r.pair.s_inf()) for r in recs)
        hi_a = max(eval_point(ctx, r.right_edge()) for r in recs)
        lo_b = min(eval_point(ctx, EPSeq(r.pair.t, r.pair.s)) for r in recs)
        hi_b = max(eval_point(ctx, r.pair.t_inf()) for r in recs)
        got = (lo_a, hi_a, lo_b, hi_b)
        for name, g_val, w_val in zip(("a_lo", "a_hi", "b_lo", "b_hi"),
                                      got, (a0, a1, b0, b1)):
            _check(fails, abs(g_val - w_val) <= 5e-3,
                   f"{g} {name} {g_val:.4f} vs {w_val}")
    _check(fails, abs(float(ctx.beta) - 1.427) <= 5e-4,
           f"beta {float(ctx.beta):.5f}")
    b2 = float(BetaContext.parse("(1100)").beta)
    _check(fails, abs(b2 - 1.755) <= 5e-4, f"beta {b2:.5f}")
    dt = time.perf_counter() - t0
    _check(fails, dt < 10.0, f"took {dt:.1f}s")
    if fails:
        return False, "; ".join(fails)
    return True, f"family rectangles and betas match ({dt:.2f}s)"


def _crit_staircase():
    t0 = time.perf_counter()
    fails = []
    ds = periodic_contexts(10)
    _check(fails, len(ds) >= 200, f"only {len(ds)} contexts")
    rows = sorted(staircase_samples(ds))
    for k in range(len(rows) - 1):
        (b0, g0), (b1, g1) = rows[k], rows[k + 1]
        if b1 - b0 > 1e-12 and g1 < g0:
            fails.append(f"slope drops {g0}->{g1} at beta {b1:.6f}")
            break
    res = critical_slope(EPSeq("", "10"))
    lo = float(BetaContext(res.plateau_low).beta)
    hi = float(BetaContext(res.plateau_high).beta)
    _check(fails, abs(lo - 1.6180) <= 1e-3, f"plateau left {lo:.6f}")
    _check(fails, abs(hi - 1.8019) <= 1e-3, f"plateau right {hi:.6f}")
    half = [b for b, g in rows if g == F(1, 2)]
    _check(fails, half and lo - 1e-9 <= min(half) and max(half) <= hi + 1e-9,
           "sampled half-slope contexts leave the plateau")
    dt = time.perf_counter() - t0
    _check(fails, dt < 60.0, f"took {dt:.1f}s")
    if fails:
        return False, "; ".join(fails)
    return True, (f"{len(ds)} contexts, plateau [{lo:.6f}, {hi:.6f}] "
                  f"({dt:.1f}s)")


def _random_endpoint(rng):
    npre = rng.randrange(0, 7)
    nper = rng.randrange(1, 11 - npre)
    pre = "".join(rng.choice("01") for _ in range(npre))
    per = "".join(rng.choice("01") for _ in range(nper))
    return EPSeq(pre, per)


def _crit_trichotomy():
    t0 = time.perf_counter()
    fails = []
    rng = random.Random(20260815)
    kinds = {EMPTY: 0, COUNTABLE: 0, UNCOUNTABLE: 0}
    holes = 0
    for dtext in CONTEXTS:
        ctx = BetaContext.parse(dtext)
        done = 0
        while done < 42:
            a, b = _random_endpoint(rng), _random_endpoint(rng)
            if b < a:
                a, b = b, a
            elif not a < b:
                continue
            hole = HoleSpec(a, b)
            res = classify(ctx.d, hole)
            kinds[res.kind] += 1
            done += 1
            holes += 1
            alive = brute_force_nonempty(ctx.d, hole, 40)
            if res.kind == EMPTY:
                if alive and brute_force_nonempty(ctx.d, hole, 80):
                    fails.append(f"{dtext} empty verdict but {a},{b} stays alive")
            elif not alive:
                fails.append(f"{dtext} {res.kind} verdict but {a},{b} dies")
            if res.kind == UNCOUNTABLE:
                c1, c2 = res.cycles
                for per in (c1, c2, c1 + c2, c2 + c1, c1 + c2 * 2, c2 + c1 * 2):
                    w = EPSeq(res.access, per)
                    if not w.is_zero() and not survives(w, ctx.d, hole):
                        fails.append(f"{dtext} pumped word {w} escapes")
            elif res.kind == COUNTABLE:
                if not (res.witnesses
                        and survives(res.witnesses[0], ctx.d, hole)):
                    fails.append(f"{dtext} countable witness fails at {a},{b}")
            if fails:
                break
        if fails:
            break
    pairs = 0
    if not fails:
        for dtext in CONTEXTS:
            ctx = BetaContext.parse(dtext)
            recs = enumerate_maximal_pairs(ctx.d, q_cap=12, tree_depth=5,
                                           count_cap=8)
            for rec in recs:
                pairs += 1
                if not verify_maximal(rec.pair, ctx.d):
                    fails.append(f"{dtext} pair {rec.pair.s} fails maximality")
                    break
                corner = HoleSpec(rec.pair.s_inf(), rec.pair.t_inf())
                if classify(ctx.d, corner).kind != COUNTABLE:
                    fails.append(f"{dtext} corner of {rec.pair.s} not countable")
                    break
            if fails:
                break
    dt = time.perf_counter() - t0
    _check(fails, dt < 300.0, f"took {dt:.1f}s")
    if fails:
        return False, "; ".join(fails)
    return True, (f"{holes} holes ({kinds[EMPTY]} empty, {kinds[COUNTABLE]} "
                  f"countable, {kinds[UNCOUNTABLE]} uncountable), "
                  f"{pairs} maximal pairs ({dt:.1f}s)")


def _crit_transfer_suite():
    t0 = time.perf_counter()
    fails = []
    n_pairs = n_lemma = 0
    bad_violations = []
    for dtext in CONTEXTS:
        ctx = BetaContext.parse(dtext)
        ib = i_beta(ctx)
        recs = enumerate_maximal_pairs(ctx.d, q_cap=12, tree_depth=5,
                                       count_cap=8)
        for rec in recs:
            s, t = rec.pair.s, rec.pair.t
            j = _rotation_offset(s, t)
            if j is None or gcd(j, len(s)) != 1:
                continue
            n_pairs += 1
            dp = farey_descendants(rec.pair, (F(1, 2), F(1, 2)))
            deep = HoleSpec(EPSeq(dp.s + dp.t, dp.s), EPSeq(dp.t, dp.s))
            if classify(ctx.d, deep).kind != COUNTABLE:
                fails.append(f"{dtext} descendant hole of {s} not countable")
            si, ti = rec.pair.s_inf(), rec.pair.t_inf()
            if not (_products_admissible(s, t, ctx.d)
                    and ib.x_lo.seq < si < ib.x_hi.seq
                    and ib.y_lo.seq < ti < ib.y_hi.seq):
                continue
            n_lemma += 1
            right = HoleSpec(si, EPSeq(t + s * 8, "0"))
            left = HoleSpec(EPSeq(s + t * 8, "1"), ti)
            for hole in (right, left):
                if classify(ctx.d, hole).kind != UNCOUNTABLE:
                    fails.append(f"{dtext} pinched hole of {s} not uncountable")
                late = [n for n in bad_n(ctx.d, hole, 40) if n > 3 * len(s)]
                if late:
                    bad_violations.append((dtext, s, min(late)))
        if fails:
            break
    dt = time.perf_counter() - t0
    _check(fails, dt < 120.0, f"took {dt:.1f}s")
    if bad_violations:
        dtext, s, n = bad_violations[0]
        fails.append(
            f"bad periods persist beyond 3|s| for {len(bad_violations)} of "
            f"{2 * n_lemma} pinched holes (first: {dtext} pair {s} bad n={n}); "
            f"orbits avoiding a hole pinched at the eighth power only exist "
            f"at periods around (2*8+3)*|s|, so no threshold near 3|s| can "
            f"hold once |s| > 2")
    if fails:
        return False, "; ".join(fails)
    return True, (f"{n_pairs} coprime pairs, {n_lemma} with admissible "
                  f"block products, all verdicts match ({dt:.1f}s)")


def _scaling_ratios(rmap):
    groups = {}
    for rec in rmap.records:
        prov = rec.pair.provenance
        if isinstance(prov, Balanced):
            groups.setdefault(prov.gamma, {})[prov.shift] = rec.pair
    beta = float(rmap.ctx.beta)
    seen = 0
    for shifts in groups.values():
        for k, pair in shifts.items():
            if k + 1 not in shifts:
                continue
            lo = eval_point(rmap.ctx, EPSeq("", pair.s))
            lo_next = eval_point(rmap.ctx, EPSeq("", shifts[k + 1].s))
            if abs(lo / lo_next - beta) > 1e-9:
                return seen, False
            seen += 1
    return seen, True


def _crit_figures():
    t0 = time.perf_counter()
    fails = []
    far_cells = 0
    ratios = 0
    for dtext, caps in FIGURE_CAPS.items():
        ctx = BetaContext.parse(dtext)
        beta = float(ctx.beta)
        rmap = RegionMap(ctx, caps)
        ib = rmap.window
        grid = raster(ctx, ib, 64, 64, region_map=rmap)
        polys = [[(float(c.a.value), float(c.b.value))
                  for c in boundary(ctx, w, region_map=rmap).corners]
                 for w in ("d0", "d1", "d2")]
        x0, x1 = float(ib.x_lo.value), float(ib.x_hi.value)
        y0, y1 = float(ib.y_lo.value), float(ib.y_hi.value)
        dx, dy = (x1 - x0) / 64, (y1 - y0) / 64
        code_of = {v: k for k, v in CODES.items()}
        for i in range(64):
            b = y1 - (i + 0.5) * dy
            for jj in range(64):
                a = x0 + (jj + 0.5) * dx
                if a >= b:
                    if grid[i][jj] != CODES[D2]:
                        fails.append(f"{dtext} inverted cell not deep at "
                                     f"({a:.4f},{b:.4f})")
                    continue
                if min(_polyline_dist((a, b), pts) for pts in polys) <= 1e-3:
                    continue
                far_cells += 1
                label = code_of[grid[i][jj]]
                if label == UNKNOWN:
                    fails.append(f"{dtext} undecided far cell ({a:.4f},{b:.4f})")
                    continue
                hole = HoleSpec(_hole_point(beta, a), _hole_point(beta, b))
                kind = recurrent_kind(classify(ctx.d, hole))
                if kind != VERDICT_FOR[label]:
                    fails.append(f"{dtext} cell ({a:.4f},{b:.4f}) maps "
                                 f"{label} but decides {kind}")
                queries = [rmap._stairs[k].query(a, b) for k in (2, 1, 0)]
                for deep, shallow in ((0, 1), (1, 2)):
                    if queries[deep] is True and queries[shallow] is False:
                        fails.append(f"{dtext} nesting breaks at "
                                     f"({a:.4f},{b:.4f})")
                if len(fails) > 4:
                    break
            if len(fails) > 4:
                break
        rank = {CODES[D2]: 3, CODES[D1_ONLY]: 2, CODES[D0_ONLY]: 1,
                CODES[OUTSIDE]: 0}
        for jj in range(64):
            best = -1
            for i in range(64):
                r = rank.get(grid[i][jj])
                if r is None:
                    continue
                if r < best:
                    fails.append(f"{dtext} column {jj} ranks climb with b")
                    break
                best = r
        seen, ok = _scaling_ratios(rmap)
        ratios += seen
        if not ok:
            fails.append(f"{dtext} shifted family ratio off beta")
        if fails:
            break
    _check(fails, ratios >= 2, f"only {ratios} shift ratios observed")
    dt = time.perf_counter() - t0
    _check(fails, dt < 600.0, f"took {dt:.1f}s")
    if fails:
        return False, "; ".join(fails[:5])
    return True, (f"2 rasters, {far_cells} far cells agree with the "
                  f"automaton, {ratios} shift ratios at 1/beta ({dt:.0f}s)")


def _crit_width_bounds():
    t0 = time.perf_counter()
    fails = []
    for dtext in CONTEXTS:
        ctx = BetaContext.parse(dtext)
        beta = float(ctx.beta)
        n = ctx.depth()
        c0, c1, c2 = c_bounds(ctx)
        want0 = beta ** (n - 1) * (beta - 1.0) / (beta ** (n + 1) - 1.0)
        want1 = (beta - 1.0) / (beta * beta)
        _check(fails, abs(c0 - want0) <= 1e-12, f"{dtext} c0 {c0!r}")
        _check(fails, c1 == c2 and abs(c1 - want1) <= 1e-12,
               f"{dtext} c1 {c1!r}")
        recs = enumerate_maximal_pairs(ctx.d, q_cap=8, tree_depth=3,
                                       count_cap=3)
        w0 = w2 = 0.0
        for rec in recs:
            si = eval_point(ctx, rec.pair.s_inf())
            ti = eval_point(ctx, rec.pair.t_inf())
            ts = eval_point(ctx, EPSeq(rec.pair.t, rec.pair.s))
            w0 = max(w0, ti - si)
            w2 = max(w2, ts - si)
            _check(fails, ti - si <= c0 + 1e-9,
                   f"{dtext} level-0 corner of {rec.pair.s} too wide")
            _check(fails, ts - si <= c2 + 1e-9,
                   f"{dtext} level-2 corner of {rec.pair.s} too wide")
        if dtext == "(1110)":
            _check(fails, abs(w2 - c2) <= 1e-9,
                   f"width {w2!r} misses bound {c2!r}")
        if fails:
            break
    dt = time.perf_counter() - t0
    _check(fails, dt < 1.0, f"took {dt:.2f}s")
    if fails:
        return False, "; ".join(fails)
    return True, f"bounds match and corners stay inside ({dt:.2f}s)"


_RUNNERS = {
    1: _crit_worked_examples,
    2: _crit_region_numerics,
    3: _crit_staircase,
    4: _crit_trichotomy,
    5: _crit_transfer_suite,
    6: _crit_figures,
    7: _crit_width_bounds,
}


def run_criterion(n: int):
    """Run one numbered check; returns (ok, detail)."""
    runner = _RUNNERS.get(n)
    if runner is None:
        raise ValueError(f"no criterion {n}")
    return runner()
