"""Command line front end: expansions, slopes, pairs, verdicts, pictures.

Every subcommand prints deterministic text so runs can be diffed.  JSON
output is sorted, CSV rows follow enumeration order, rasters are plain
PGM.  Usage problems exit with 2, failures inside the computation exit
with 1 and name the error type.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional

from betahole import decide, regions
from betahole.beta_shift import (
    BetaContext,
    greedy_digits,
    max_admissible_below,
    quasigreedy_of_one,
)
from betahole.farey import balanced_pair
from betahole.pairs import ExtremalPair, farey_descendants
from betahole.staircase import critical_slope, periodic_contexts, slope_vector
from betahole.words import EPSeq

CAP_NAMES = ("q_cap", "tree_depth", "descendant_depth", "period_cap",
             "state_cap")


@dataclass
class RunConfig:
    """Resolved knobs for one invocation."""

    subcommand: str = ""
    d: Optional[str] = None
    greedy_one: Optional[str] = None
    q_cap: int = 12
    tree_depth: int = 4
    descendant_depth: int = 2
    period_cap: int = 10
    state_cap: int = 1000000
    tol: float = 1e-9
    out: Optional[str] = None
    output: Optional[str] = None
    a: Optional[str] = None
    b: Optional[str] = None
    closed: bool = False
    x: Optional[float] = None
    digits: int = 40
    below: Optional[str] = None
    check: Optional[str] = None
    n_max: int = 40
    which: Optional[str] = None
    window: Optional[str] = None
    size: str = "64x64"
    criterion: int = 0

    def validate(self):
        for name in CAP_NAMES:
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be at least 1")
        if not 0.0 < self.tol <= 1e-3:
            raise UsageError("tol must lie in (0, 1e-3]")

    def context(self) -> BetaContext:
        if (self.d is None) == (self.greedy_one is None):
            raise UsageError("exactly one of --d or --greedy-one is required")
        if self.d is not None:
            return BetaContext.parse(self.d)
        return BetaContext(quasigreedy_of_one(self.greedy_one))

    def region_caps(self) -> regions.RegionCaps:
        return regions.RegionCaps(
            q_cap=self.q_cap,
            tree_depth=self.tree_depth,
            desc_depth=self.descendant_depth,
        )


class UsageError(Exception):
    pass


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_frac(g: Fraction) -> str:
    return f"{g.numerator}/{g.denominator}"


def cmd_expand(cfg: RunConfig) -> int:
    ctx = cfg.context()
    lines = [f"d {ctx.d}", f"beta {float(ctx.beta):.12f}"]
    if cfg.x is not None:
        if not 0.0 <= cfg.x < 1.0:
            raise UsageError("--x must lie in [0, 1)")
        lines.append(f"greedy {greedy_digits(ctx.beta, cfg.x, cfg.digits)}")
    if cfg.check is not None:
        seq = EPSeq.parse(cfg.check)
        verdict = "admissible" if ctx.admits(seq) else "inadmissible"
        lines.append(f"check {seq} {verdict}")
    if cfg.below is not None:
        target = EPSeq.parse(cfg.below)
        got = max_admissible_below(target, ctx.d)
        lines.append(f"below {got}")
        fin = _finite_form(got, ctx.d)
        if fin is not None:
            lines.append(f"finite {fin}")
    return _done(cfg, lines)


def _finite_form(y: EPSeq, d: EPSeq) -> Optional[str]:
    # y = u 0 d means y is the expansion u1 followed by zeros
    text = y.pre + y.per * 3
    for k in range(len(y.pre) + len(y.per) + 1):
        cand = EPSeq(text[:k] + "0" + d.pre, d.per)
        if cand == y:
            return text[:k] + "1"
    return None


def cmd_gamma(cfg: RunConfig) -> int:
    ctx = cfg.context()
    res = critical_slope(ctx.d)
    vec = slope_vector(ctx.d)
    lines = [
        f"d {ctx.d}",
        f"beta {float(ctx.beta):.12f}",
        f"gamma {_fmt_frac(res.value)}",
        f"plateau_low {res.plateau_low}",
        f"plateau_high {res.plateau_high}",
        "Gamma (" + ", ".join(_fmt_frac(g) for g in vec.entries) + ")",
        f"terminal {vec.terminal} {vec.reason}",
    ]
    if vec.entries:
        base = ExtremalPair(*balanced_pair(vec.entries[0]))
        desc = farey_descendants(base, list(vec.entries[1:]))
        lines.append(f"descendant_pair {desc.s} {desc.t}")
    return _done(cfg, lines)


def cmd_staircase(cfg: RunConfig) -> int:
    rows = []
    for d in periodic_contexts(cfg.period_cap):
        ctx = BetaContext(d)
        g = critical_slope(d).value
        rows.append((float(ctx.beta), g, d))
    rows.sort(key=lambda r: (r[0], str(r[2])))
    if cfg.out == "csv":
        lines = ["beta,p,q"]
        lines += [f"{b:.12f},{g.numerator},{g.denominator}" for b, g, _ in rows]
    else:
        lines = [f"{b:.12f} {_fmt_frac(g)} {d}" for b, g, d in rows]
    return _done(cfg, lines)


def cmd_pairs(cfg: RunConfig) -> int:
    ctx = cfg.context()
    recs = regions.RegionMap(ctx, cfg.region_caps()).records
    entries = []
    for rec in recs:
        s, t = rec.pair.s, rec.pair.t
        entries.append({
            "s": s,
            "t": t,
            "provenance": repr(rec.pair.provenance),
            "s_inf": float(ctx.value(EPSeq("", s))),
            "t_inf": float(ctx.value(EPSeq("", t))),
            "truncated": rec.truncated is not None,
            "right_edge": str(rec.right_edge()),
        })
    if cfg.out == "json":
        lines = [json.dumps(entries, sort_keys=True, indent=2)]
    else:
        lines = [
            "{s} {t} [{lo:.9f}, {hi:.9f}]{cut}".format(
                s=e["s"], t=e["t"], lo=e["s_inf"], hi=e["t_inf"],
                cut=" truncated" if e["truncated"] else "")
            for e in entries
        ]
    return _done(cfg, lines)


def _hole_from(cfg: RunConfig) -> decide.HoleSpec:
    if cfg.a is None or cfg.b is None:
        raise UsageError("--a and --b are required")
    return decide.HoleSpec(EPSeq.parse(cfg.a), EPSeq.parse(cfg.b),
                           closed=cfg.closed)


def cmd_decide(cfg: RunConfig) -> int:
    ctx = cfg.context()
    res = decide.classify(ctx.d, _hole_from(cfg), state_cap=cfg.state_cap)
    lines = [f"kind {res.kind}", f"states {res.states}"]
    for w in res.witnesses:
        lines.append(f"witness {w}")
    for c in res.cycles:
        lines.append(f"cycle {c}")
    return _done(cfg, lines)


def cmd_badn(cfg: RunConfig) -> int:
    ctx = cfg.context()
    hole = _hole_from(cfg)
    bad = sorted(decide.bad_n(ctx.d, hole, cfg.n_max))
    lines = [
        f"n_beta {decide.n_beta(ctx.d)}",
        f"n_max {cfg.n_max}",
        "bad " + (" ".join(str(n) for n in bad) if bad else "none"),
    ]
    return _done(cfg, lines)


def cmd_regions(cfg: RunConfig) -> int:
    ctx = cfg.context()
    if cfg.which not in ("d0", "d1", "d2"):
        raise UsageError("--which must be one of d0, d1, d2")
    poly = regions.boundary(ctx, cfg.which, caps=cfg.region_caps())
    if cfg.out == "json":
        data = [{
            "a": float(c.a.value), "a_seq": str(c.a.seq),
            "b": float(c.b.value), "b_seq": str(c.b.seq),
            "kind": c.kind,
        } for c in poly.corners]
        lines = [json.dumps(data, sort_keys=True, indent=2)]
    else:
        lines = ["a,b,kind"]
        lines += [f"{float(c.a.value):.12f},{float(c.b.value):.12f},{c.kind}"
                  for c in poly.corners]
    return _done(cfg, lines)


def _window_from(cfg: RunConfig, ctx: BetaContext):
    name = (cfg.window or "ibeta").lower()
    if name in ("ibeta", "i_beta", "i"):
        return regions.i_beta(ctx)
    if name in ("rbeta", "r_beta", "r"):
        win = regions.r_beta(ctx)
        if isinstance(win, regions.EmptyRegion):
            raise ValueError("the pocket window is empty for this context")
        return win
    parts = name.split(",")
    if len(parts) != 4:
        raise UsageError("--window takes ibeta, rbeta or a0,a1,b0,b1")
    try:
        a0, a1, b0, b1 = (float(p) for p in parts)
    except ValueError:
        raise UsageError("--window takes ibeta, rbeta or a0,a1,b0,b1")
    pv = regions.PointValue
    return regions.Rect(pv(None, a0), pv(None, a1), pv(None, b0), pv(None, b1))


def cmd_raster(cfg: RunConfig) -> int:
    ctx = cfg.context()
    try:
        w, h = (int(p) for p in cfg.size.lower().split("x"))
    except ValueError:
        raise UsageError("--size takes WxH, for example 64x64")
    window = _window_from(cfg, ctx)
    grid = regions.raster(ctx, window, w, h, caps=cfg.region_caps())
    if cfg.out == "csv":
        lines = [",".join(str(v) for v in row) for row in grid]
        return _done(cfg, lines)
    _emit(cfg, regions.raster_pgm(grid))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    from betahole import checks

    wanted = [cfg.criterion] if cfg.criterion else list(range(1, 8))
    lines = []
    all_ok = True
    for n in wanted:
        ok, detail = checks.run_criterion(n)
        all_ok &= ok
        label = "PASS" if ok else "FAIL"
        lines.append(f"criterion {n} {checks.NAMES[n]}: {label} ({detail})")
    lines.append("result " + ("PASS" if all_ok else "FAIL"))
    _done(cfg, lines)
    return 0 if all_ok else 1


HANDLERS = {
    "expand": cmd_expand,
    "gamma": cmd_gamma,
    "staircase": cmd_staircase,
    "pairs": cmd_pairs,
    "decide": cmd_decide,
    "badn": cmd_badn,
    "regions": cmd_regions,
    "raster": cmd_raster,
    "verify": cmd_verify,
}


def _done(cfg: RunConfig, lines) -> int:
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betahole",
        description="Survivor sets of beta-transformations with a hole.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, context=True):
        if context:
            p.add_argument("--d", help='expansion of 1, as "PRE(PER)"')
            p.add_argument("--greedy-one", dest="greedy_one",
                           help="finite greedy expansion of 1")
        p.add_argument("--config", help="JSON file with stored options")
        p.add_argument("--dump-config", action="store_true",
                       help="print resolved options as JSON and stop")
        p.add_argument("--tol", type=float)
        p.add_argument("--q-cap", dest="q_cap", type=int)
        p.add_argument("--tree-depth", dest="tree_depth", type=int)
        p.add_argument("--descendant-depth", dest="descendant_depth",
                       type=int)
        p.add_argument("--period-cap", dest="period_cap", type=int)
        p.add_argument("--state-cap", dest="state_cap", type=int)
        p.add_argument("--out", choices=("text", "json", "csv", "pgm"))
        p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("expand", help="expansions and admissible neighbours")
    common(p)
    p.add_argument("--x", type=float, help="point of [0,1) to expand")
    p.add_argument("--digits", type=int)
    p.add_argument("--check", help='sequence "PRE(PER)" to test')
    p.add_argument("--below", help='sequence "PRE(PER)" to cut down')

    p = sub.add_parser("gamma", help="critical slope and its refinement")
    common(p)

    p = sub.add_parser("staircase", help="slope against beta for short periods")
    common(p, context=False)

    p = sub.add_parser("pairs", help="maximal pair records")
    common(p)

    p = sub.add_parser("decide", help="classify one hole")
    common(p)
    p.add_argument("--a", help='left endpoint, as "PRE(PER)"')
    p.add_argument("--b", help='right endpoint, as "PRE(PER)"')
    p.add_argument("--closed", action="store_true")

    p = sub.add_parser("badn", help="orbit periods forced into the hole")
    common(p)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--closed", action="store_true")
    p.add_argument("--n-max", dest="n_max", type=int)

    p = sub.add_parser("regions", help="boundary polyline of one level")
    common(p)
    p.add_argument("--which", choices=("d0", "d1", "d2"))

    p = sub.add_parser("raster", help="classification grid over a window")
    common(p)
    p.add_argument("--window", help="ibeta, rbeta or a0,a1,b0,b1")
    p.add_argument("--size", help="WxH")

    p = sub.add_parser("verify", help="run the acceptance checks")
    common(p, context=False)
    p.add_argument("--criterion", type=int, choices=range(1, 8))

    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    for name in CAP_NAMES:
        env = os.environ.get("BETAHOLE_" + name.upper())
        if env is not None:
            setattr(cfg, name, int(env))
    stored = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            stored = json.load(fh)
        if not isinstance(stored, dict):
            raise UsageError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    for key, val in stored.items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        if key != "subcommand":
            setattr(cfg, key, val)
    for key in known:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            setattr(cfg, key, val)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if getattr(args, "dump_config", False):
            data = {f.name: getattr(cfg, f.name) for f in fields(RunConfig)}
            _emit(cfg, json.dumps(data, sort_keys=True, indent=2) + "\n")
            return 0
        return HANDLERS[args.subcommand](cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except Exception as exc:  # noqa: BLE001  computation failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
