"""Scalar auxiliary functions and the inequality verification suites.

Every check is stored as ``lhs <= rhs`` with both uncertainties, so a record
can be re-judged on its own.  Two tolerance rules are used:

``exact``
    closed form against closed form; passes when ``rhs - lhs >= -1e-12``.
``3sigma``
    at least one side is a Monte Carlo estimate; passes when
    ``rhs - lhs >= -3 sqrt(stderr_lhs**2 + stderr_rhs**2)``.  A failing
    Monte Carlo check is recomputed once with four times the samples before
    it is reported.

Theorem 1 for a general staircase domain is checked through the links of its
proof (the gap itself needs a Riemann map we do not have); the head
inequality is checked directly only when both gaps are computable.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .geom import DomainError, StaircaseDomain, contains, left_component, require_valid
from .harmonic.closed_form import crosscut_geodesic, diam_bound, inverse_slit_disk, slit_disk
from .harmonic.wos import Target, WosParams, hm_wos, slit_measure
from .semigroup import CanonicalDomain, trajectory_symmetric
from .transform import polarize, steiner, steiner_crosscut

EXACT_TOL = 1e-12
ESCALATION = 4


# ---------------------------------------------------------------------------
# Scalar functions
# ---------------------------------------------------------------------------


def _open_unit(r, name="r"):
    if not 0.0 < r < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {r}")


def psi(r: float) -> float:
    _open_unit(r)
    return (2.0 / math.pi) * math.atan(2.0 * r / (1.0 - r * r)) \
        + (4.0 / math.pi) * math.atan((1.0 - r) / (2.0 * math.sqrt(r)))


def k_fn(r: float) -> float:
    _open_unit(r)
    return (2.0 / math.pi) * math.atan((1.0 - r) / (2.0 * math.sqrt(r))) - 1.0 + r


def arctan_identity_check(x: float) -> tuple[float, float]:
    """(1 - (2/pi) atan x, (2/pi) atan(1/x)); equal for x > 0 only."""
    if x == 0:
        raise ValueError("x must be nonzero")
    return 1.0 - (2.0 / math.pi) * math.atan(x), (2.0 / math.pi) * math.atan(1.0 / x)


def final_inequality_check(x: float) -> tuple[float, float]:
    """(atan((1 - x^2) / 2x), (pi/2)(1 - x)) for x in (-1, 0) or (0, 1)."""
    if not (-1.0 < x < 1.0) or x == 0:
        raise ValueError("x must lie in (-1, 0) or (0, 1)")
    return math.atan((1.0 - x * x) / (2.0 * x)), 0.5 * math.pi * (1.0 - x)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class CheckRecord:
    name: str
    anchor: str
    lhs: float
    rhs: float
    stderr_lhs: float = 0.0
    stderr_rhs: float = 0.0
    tolerance_rule: str = "exact"
    t: float | None = None
    samples: int | None = None
    escalated: bool = False
    censored_fraction: float = 0.0
    note: str = ""

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def tolerance(self) -> float:
        if self.tolerance_rule == "exact":
            return EXACT_TOL
        return 3.0 * math.hypot(self.stderr_lhs, self.stderr_rhs)

    @property
    def passed(self) -> bool:
        return self.margin >= -self.tolerance

    def as_dict(self) -> dict:
        d = asdict(self)
        d["margin"] = self.margin
        d["pass"] = self.passed
        return d


@dataclass
class VerificationReport:
    suite: str
    fixture: dict
    params: dict
    checks: list[CheckRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def n_failed(self) -> int:
        return sum(not c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "fixture": self.fixture,
            "params": self.params,
            "notes": list(self.notes),
            "checks": [c.as_dict() for c in self.checks],
        }


CSV_COLUMNS = ("suite", "name", "t", "lhs", "rhs", "stderr_lhs", "stderr_rhs", "margin",
               "pass", "tolerance_rule", "samples", "escalated", "anchor")


def report_rows(reports):
    for rep in reports:
        for c in rep.checks:
            d = c.as_dict()
            d["suite"] = rep.suite
            yield {k: ("" if d[k] is None else d[k]) for k in CSV_COLUMNS}


def _params_dict(params: WosParams) -> dict:
    d = asdict(params)
    d["right_cap"] = repr(d["right_cap"])
    return d


def _fixture(domain) -> dict:
    if isinstance(domain, CanonicalDomain):
        return {"canonical": domain.describe()}
    return {"domain": domain.to_json()}


def _mc(name, anchor, t, params, compute, note=""):
    """Run a Monte Carlo comparison, escalating samples once on failure.

    ``compute(params)`` returns the two estimates (lhs, rhs).
    """
    def record(pp, escalated):
        a, b = compute(pp)
        return CheckRecord(name, anchor, a.value, b.value, a.stderr, b.stderr, "3sigma", t,
                           pp.n_samples, escalated=escalated,
                           censored_fraction=max(a.censored_fraction, b.censored_fraction), note=note)

    rec = record(params, False)
    if not rec.passed:
        rec = record(params.scaled(ESCALATION), True)
    return rec


def _exact(name, anchor, lhs, rhs, t=None, note=""):
    return CheckRecord(name, anchor, float(lhs), float(rhs), t=t, note=note)


def _crosscut_measure(domain, t, params):
    comp, cut = left_component(domain, t)
    if not cut:
        raise DomainError(f"empty crosscut at t={t}")
    return hm_wos(comp, (), (0.0, 0.0), Target.vertical(t), params), comp, cut


def _crosscut_measure_sharp(comp, cut, t, params):
    sharp = steiner(comp, check=False)
    seg = steiner_crosscut(cut)[0]
    edge = [s for s in sharp.boundary_segments() if s.vertical and s.x0 == t]
    if len(edge) != 1 or (edge[0].y0, edge[0].y1) != (seg.y0, seg.y1):
        raise DomainError("symmetrized crosscut does not match the symmetrized component")
    return hm_wos(sharp, (), (0.0, 0.0), Target.vertical(t), params)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

T1_ANCHOR = "Theorem 1: gap <= 4 pi gap of the Steiner symmetrization"
T2_ANCHOR = "Theorem 2: gap <= 2 pi gap of the polarization"


def _head_canonical(dom: CanonicalDomain, partner: CanonicalDomain, const, name, anchor, t_grid):
    out = []
    for t in t_grid:
        g, gs = dom.gap(t).gap, partner.gap(t).gap
        out.append(_exact(name, anchor, g, const * gs, t=t,
                          note=f"{dom.describe()} vs {partner.describe()}"))
    return out


def check_theorem1(domain, t_grid, params: WosParams = WosParams()) -> VerificationReport:
    """Theorem 1 on a canonical domain (head, closed forms) or a staircase
    domain (every computable link of the proof, plus the head when the domain
    is symmetric)."""
    t_grid = [float(t) for t in t_grid]
    rep = VerificationReport("t1", _fixture(domain), _params_dict(params))
    if isinstance(domain, CanonicalDomain):
        rep.checks += _head_canonical(domain, domain.steiner(), 4.0 * math.pi, "HEAD", T1_ANCHOR, t_grid)
        return rep
    require_valid(domain)
    sharp = steiner(domain)
    symmetric = domain.is_symmetric()
    rep.notes.append("links L1-L4 stand in for the head inequality: the gap of a "
                     "non-symmetric staircase domain is not computed")
    for t in t_grid:
        if t <= 0:
            rep.notes.append(f"t={t}: chain skipped (needs t > 0); both gaps equal 1")
            continue
        try:
            rep.checks += _theorem1_at(domain, sharp, symmetric, t, params)
        except (DomainError, ValueError) as exc:
            rep.notes.append(f"t={t}: {exc}")
            rep.checks.append(CheckRecord("ERROR", T1_ANCHOR, math.nan, math.nan, t=t, note=str(exc)))
    return rep


def _theorem1_at(domain, sharp, symmetric, t, params):
    out = []
    seeds = {k: params.seed + 1_000_003 * k for k in range(4)}

    def p(k, base):
        return WosParams(base.n_samples, seeds[k], base.eps, base.max_steps, base.right_cap)

    def l1(pp):
        a = slit_measure(domain, t, p(0, pp))
        b, _, _ = _crosscut_measure(domain, t, p(1, pp))
        return a, b

    out.append(_mc("L1", "maximum principle: slit measure <= crosscut measure", t, params, l1))

    def l2(pp):
        a, comp, cut = _crosscut_measure(domain, t, p(1, pp))
        b = _crosscut_measure_sharp(comp, cut, t, p(1, pp))
        return a, b

    out.append(_mc("L2", "Baernstein: crosscut measure <= symmetrized crosscut measure", t, params, l2))

    w = slit_measure(sharp, t, p(2, params))
    wv = min(max(w.value, 0.5 / w.n_samples), 1.0 - 0.5 / w.n_samples)
    r = inverse_slit_disk(wv)
    out.append(_exact("L3", "psi >= 1: geodesic crosscut measure <= twice the slit measure",
                      crosscut_geodesic(r), 2.0 * slit_disk(r), t=t, note=f"r={r!r}"))
    out.append(_exact("L4", "k <= 0: slit measure <= 1 - r",
                      slit_disk(r), 1.0 - r, t=t, note=f"r={r!r}"))
    if symmetric:
        g = trajectory_symmetric(domain, t, p(3, params))
        out.append(CheckRecord("HEAD", T1_ANCHOR, g.gap, 4.0 * math.pi * g.gap, g.stderr_gap,
                               4.0 * math.pi * g.stderr_gap, "3sigma", t, params.n_samples,
                               note="symmetric domain: the symmetrization is the domain itself"))
    return out


def check_theorem2(domain, t_grid, params: WosParams = WosParams()) -> VerificationReport:
    """Theorem 2 head on canonical pairs; the polarization inequality for
    the slit measure on staircase domains."""
    t_grid = [float(t) for t in t_grid]
    rep = VerificationReport("t2", _fixture(domain), _params_dict(params))
    if isinstance(domain, CanonicalDomain):
        rep.checks += _head_canonical(domain, domain.polarize(), 2.0 * math.pi, "HEAD", T2_ANCHOR, t_grid)
        return rep
    require_valid(domain)
    if not contains(domain, (0.0, 0.0)):
        raise DomainError("domain must contain [0, inf)")
    hat = polarize(domain)
    rep.notes.append("head inequality checked on closed-form pairs only; no orbit "
                     "position r is recovered here, so no negative-r case can arise")
    for t in t_grid:
        if t <= 0:
            rep.notes.append(f"t={t}: slit through the origin, skipped")
            continue

        def p1(pp, t=t):
            a = slit_measure(domain, t, pp)
            b = slit_measure(hat, t, pp)
            return a, b

        rep.checks.append(_mc("P1", "polarization: slit measure <= slit measure of the polarization",
                              t, params, p1))
    return rep


def check_baernstein(domain: StaircaseDomain, t: float, params: WosParams = WosParams()) -> VerificationReport:
    rep = VerificationReport("baernstein", _fixture(domain), _params_dict(params))
    if not t > 0:
        raise ValueError("t must be positive")

    def cmp(pp):
        a, comp, cut = _crosscut_measure(domain, t, pp)
        b = _crosscut_measure_sharp(comp, cut, t, pp)
        return a, b

    rep.checks.append(_mc("BAE", "Baernstein: crosscut measure <= symmetrized crosscut measure",
                          t, params, cmp))
    return rep


def check_diam(r_grid=None, params: WosParams | None = None) -> VerificationReport:
    """Radial slit [r, 1): its harmonic measure dominates the diameter bound."""
    if r_grid is None:
        r_grid = np.linspace(1e-3, 1.0 - 1e-3, 200)
    rep = VerificationReport("diam", {"slit": "radial [r, 1) in the unit disk"}, {})
    for r in r_grid:
        r = float(r)
        _open_unit(r)
        rep.checks.append(_exact("DIAM", "diameter bound for the radial slit",
                                 diam_bound(1.0 - r), slit_disk(r), note=f"r={r!r}"))
    return rep


def check_scalars(n: int = 10_000) -> VerificationReport:
    """Grid suite for psi, k, the arctan identity and the final inequality."""
    rep = VerificationReport("scalars", {"grid_points": n}, {})
    xs = np.linspace(0.0, 1.0, n + 2)[1:-1]
    ps = [psi(x) for x in xs]
    ks = [k_fn(x) for x in xs]
    steep = min(a - b for a, b in zip(ps, ps[1:]))
    rep.checks.append(_exact("PSI_DECREASING", "psi strictly decreasing", 0.0, steep,
                             note="min consecutive drop must be > 0"))
    rep.checks.append(_exact("PSI_GE_1", "psi >= 1 on (0, 1)", 1.0, min(ps)))
    rep.checks.append(_exact("K_NONPOSITIVE", "k <= 0 on (0, 1)", max(ks), 0.0))
    d = np.sign(np.diff(ks))
    changes = int(np.count_nonzero(np.diff(d[d != 0]) != 0))
    rep.checks.append(_exact("K_UNIMODAL", "k has a unique minimum", abs(changes - 1), 0.0,
                             note=f"consecutive differences change sign {changes} time(s)"))
    pos = xs * 10.0
    err = max(abs(a - b) for a, b in map(arctan_identity_check, pos))
    rep.checks.append(_exact("ARCTAN_IDENTITY", "1 - (2/pi) atan x = (2/pi) atan(1/x), x > 0", err, 0.0,
                             note="max abs difference"))
    fx = np.concatenate([-xs[::-1], xs])
    worst = max(a - b for a, b in map(final_inequality_check, fx))
    rep.checks.append(_exact("FINAL_INEQUALITY", "atan((1-x^2)/2x) <= (pi/2)(1-x)", worst, 0.0,
                             note="max of lhs - rhs"))
    return rep
