"""Command-line front end.

Every tabular output starts with one ``#`` line holding the tool version and
the full run configuration as JSON, so re-running that configuration
reproduces the file byte for byte.  Domain JSON outputs are written in the
plain domain format without a header so they can be fed back in.

Exit status: 0 success, 1 a verification check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .fixtures import NAMED, random_suite
from .geom import DomainError, Segment, dumps_domain, loads_domain, require_valid
from .harmonic.grid import hm_grid
from .harmonic.wos import HMEstimate, Target, WosParams, hm_wos
from .semigroup import CanonicalDomain, TrajectoryPoint, trajectory_symmetric
from .transform import polarize, steiner
from .verify import (
    CSV_COLUMNS,
    check_baernstein,
    check_diam,
    check_scalars,
    check_theorem1,
    check_theorem2,
    report_rows,
)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def parse_t_grid(text: str) -> list[float]:
    """``t0:t1:n`` (linear), ``t0:t1:n:geom`` or a comma list.

    A geometric grid starting at 0 is 0 followed by n - 1 geometric points
    from 1 to t1.
    """
    text = text.strip()
    if ":" not in text:
        vals = [float(v) for v in text.split(",") if v.strip()]
        if not vals:
            raise InputError("empty t-grid")
        return vals
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise InputError(f"bad t-grid {text!r}")
    t0, t1, n = float(parts[0]), float(parts[1]), int(parts[2])
    mode = parts[3] if len(parts) == 4 else "lin"
    if n < 1 or t1 < t0 or t0 < 0:
        raise InputError(f"bad t-grid {text!r}")
    if n == 1:
        return [t0]
    if mode == "lin":
        return [float(v) for v in np.linspace(t0, t1, n)]
    if mode == "geom":
        snap = lambda vs: [float(f"{v:.12g}") for v in vs]  # noqa: E731
        if t0 == 0:
            if t1 < 1 or n < 2:
                raise InputError("geometric grid from 0 needs t1 >= 1")
            return [0.0] + ([1.0] if n == 2 else snap(np.geomspace(1.0, t1, n - 1)))
        return snap(np.geomspace(t0, t1, n))
    raise InputError(f"unknown grid mode {mode!r}")


def load_domains(src: str):
    """Domain source -> list of (label, domain) where domain is a
    StaircaseDomain or a CanonicalDomain."""
    if src.startswith("canonical:"):
        return [(src, CanonicalDomain.parse(src))]
    if src.startswith("random:"):
        parts = src.split(":")
        if len(parts) != 3:
            raise InputError("random domains are given as random:seed:count")
        seed, count = int(parts[1]), int(parts[2])
        if count < 1:
            raise InputError("count must be >= 1")
        return [(f"random:{seed}:{i}", d) for i, d in enumerate(random_suite(seed, count))]
    if src.startswith("fixture:"):
        name = src.split(":", 1)[1]
        if name not in NAMED:
            raise InputError(f"unknown fixture {name!r}; known: {', '.join(sorted(NAMED))}")
        return [(src, NAMED[name]())]
    with open(src) as fh:
        text = fh.read()
    return [(src, loads_domain(text))]


def load_one(src: str, staircase: bool = False):
    doms = load_domains(src)
    if len(doms) != 1:
        raise InputError("this subcommand takes a single domain")
    dom = doms[0][1]
    if staircase and isinstance(dom, CanonicalDomain):
        if dom.kind == "sector":
            raise InputError("the sector has no exact staircase form")
        dom = dom.to_staircase()
    return dom


def _params(args) -> WosParams:
    return WosParams(n_samples=args.samples, seed=args.seed, eps=args.eps,
                     max_steps=args.max_steps)


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}


def header(args) -> str:
    return f"# koenigs {__version__} " + json.dumps(_config(args), sort_keys=True)


def write_text(out: str | None, text: str):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def csv_text(args, columns, rows) -> str:
    buf = io.StringIO()
    buf.write(header(args) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_transform(args, fn) -> int:
    dom = load_one(args.domain, staircase=True)
    require_valid(dom, need_origin=False)
    write_text(args.out, dumps_domain(fn(dom)) + "\n")
    return 0


def cmd_fixture(args) -> int:
    if args.name not in NAMED:
        raise InputError(f"unknown fixture {args.name!r}")
    write_text(args.out, dumps_domain(NAMED[args.name]()) + "\n")
    return 0


HM_COLUMNS = ("value", "stderr", "n", "method", "eps", "censored_fraction")


def cmd_hm(args) -> int:
    dom = load_one(args.domain, staircase=True)
    require_valid(dom, need_origin=False)
    slits = [Segment.ray(args.slit)] if args.slit is not None else []
    try:
        z0 = tuple(float(v) for v in args.z0.split(","))
    except ValueError as exc:
        raise InputError(f"bad --z0 {args.z0!r}") from exc
    if len(z0) != 2:
        raise InputError("--z0 takes x,y")
    target = Target.parse(args.target)
    if args.method == "grid":
        v = hm_grid(dom, slits, z0, target, h=args.h)
        est = HMEstimate(value=min(max(v, 0.0), 1.0), stderr=0.0, n_samples=0, method="grid")
    else:
        est = hm_wos(dom, slits, z0, target, _params(args))
    write_text(args.out, csv_text(args, HM_COLUMNS, [est.as_row()]))
    return 0


TRAJ_COLUMNS = ("t", "phi0", "gap", "stderr_gap", "method")


def _trajectory(dom, t, params) -> TrajectoryPoint:
    if isinstance(dom, CanonicalDomain):
        return dom.gap(t)
    require_valid(dom)
    if not dom.is_symmetric():
        raise InputError("the gap of a non-symmetric staircase domain is not computable "
                         "(no general Riemann map); use a symmetric or canonical domain")
    return trajectory_symmetric(dom, t, params)


def cmd_trajectory(args) -> int:
    dom = load_one(args.domain)
    params = _params(args)
    rows = [_trajectory(dom, t, params).as_row() for t in parse_t_grid(args.t_grid)]
    write_text(args.out, csv_text(args, TRAJ_COLUMNS, rows))
    return 0


GAP_COLUMNS = ("t", "gap", "stderr_gap", "gap_sharp", "stderr_sharp", "ratio", "ratio_upper_3sigma")


def emit_gap_curve(domain, t_grid, params: WosParams, partner: str = "steiner") -> list[dict]:
    """Gap of ``domain`` and of its symmetrization (or polarization) along ``t_grid``."""
    if isinstance(domain, CanonicalDomain):
        other = domain.steiner() if partner == "steiner" else domain.polarize()
    else:
        require_valid(domain)
        if not domain.is_symmetric():
            raise InputError("gap curve needs a canonical or symmetric domain")
        other = steiner(domain) if partner == "steiner" else polarize(domain)
    rows = []
    for t in t_grid:
        a = _trajectory(domain, t, params)
        b = _trajectory(other, t, params)
        ratio = a.gap / b.gap if b.gap > 0 else math.inf
        lo = b.gap - 3.0 * b.stderr_gap
        upper = (a.gap + 3.0 * a.stderr_gap) / lo if lo > 0 else math.inf
        rows.append({"t": t, "gap": a.gap, "stderr_gap": a.stderr_gap, "gap_sharp": b.gap,
                     "stderr_sharp": b.stderr_gap, "ratio": ratio, "ratio_upper_3sigma": upper})
    return rows


def cmd_gap_curve(args) -> int:
    dom = load_one(args.domain)
    rows = emit_gap_curve(dom, parse_t_grid(args.t_grid), _params(args), args.partner)
    write_text(args.out, csv_text(args, GAP_COLUMNS, rows))
    return 0


def _verify_reports(args):
    params = _params(args)
    if args.check == "scalars":
        return [check_scalars()]
    if args.check == "diam":
        return [check_diam()]
    if args.domain is None:
        raise InputError(f"--check {args.check} needs --domain")
    t_grid = parse_t_grid(args.t_grid)
    reports = []
    for _, dom in load_domains(args.domain):
        if args.check == "t1":
            reports.append(check_theorem1(dom, t_grid, params))
        elif args.check == "t2":
            reports.append(check_theorem2(dom, t_grid, params))
        else:
            if isinstance(dom, CanonicalDomain):
                if dom.kind == "sector":
                    raise InputError("the sector has no exact staircase form")
                dom = dom.to_staircase()
            if args.check == "polarization":
                reports.append(check_theorem2(dom, t_grid, params))
            else:
                for t in t_grid:
                    if t <= 0:
                        raise InputError("baernstein needs t > 0")
                    reports.append(check_baernstein(dom, t, params))
    return reports


def cmd_verify(args) -> int:
    reports = _verify_reports(args)
    fmt = args.format
    out = args.out
    if out in ("json", "csv"):
        fmt, out = out, None
    if fmt is None:
        fmt = "csv" if out and out.endswith(".csv") else "json"
    if fmt == "json":
        doc = {"tool": f"koenigs {__version__}", "config": _config(args),
               "passed": all(r.passed for r in reports),
               "reports": [r.as_dict() for r in reports]}
        text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    else:
        text = csv_text(args, CSV_COLUMNS, report_rows(reports))
    write_text(out, text)
    return 0 if all(r.passed for r in reports) else 1


def _json_default(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    raise TypeError(type(v).__name__)


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------


def _add_mc(p, samples=100_000):
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--max-steps", type=int, default=100_000)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="koenigs", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"koenigs {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (("symmetrize", steiner), ("polarize", polarize)):
        p = sub.add_parser(name, help=f"{name} a domain (JSON in, JSON out)")
        p.add_argument("--domain", required=True)
        p.add_argument("--out")
        p.set_defaults(func=lambda a, fn=fn: cmd_transform(a, fn))

    p = sub.add_parser("fixture", help="print a named reference domain as JSON")
    p.add_argument("name", choices=sorted(NAMED))
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("hm", help="harmonic measure of a target")
    p.add_argument("--domain", required=True)
    p.add_argument("--slit", type=float, default=None, help="t0: remove [t0, inf) on the real axis")
    p.add_argument("--target", default="slit")
    p.add_argument("--z0", default="0,0")
    p.add_argument("--method", choices=("wos", "grid"), default="wos")
    p.add_argument("--h", type=float, default=1.0 / 64)
    _add_mc(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_hm)

    p = sub.add_parser("trajectory", help="gap |phi_t(0) - tau| along a t-grid")
    p.add_argument("--domain", required=True)
    p.add_argument("--t-grid", default="0:8:9")
    _add_mc(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("gap-curve", help="gap and partner gap with ratio bands")
    p.add_argument("--domain", required=True)
    p.add_argument("--t-grid", default="0:8:9")
    p.add_argument("--partner", choices=("steiner", "polarize"), default="steiner")
    _add_mc(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gap_curve)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--check", required=True,
                   choices=("t1", "t2", "baernstein", "polarization", "diam", "scalars"))
    p.add_argument("--domain")
    p.add_argument("--t-grid", default="1,2,4")
    _add_mc(p)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DomainError, ValueError, OSError, KeyError) as exc:
        print(f"koenigs: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
