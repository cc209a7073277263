"""Acceptance criteria, one test each.

Every test prints a single ``[acceptance N] PASS|FAIL`` line (also collected
into the terminal summary) and enforces its runtime budget.
"""
import math
import os
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from koenigs.fixtures import fig1, random_suite
from koenigs.geom import INF, IntervalSet, Segment, StaircaseDomain, cross_section, left_component, validate
from koenigs.harmonic import WosParams, hm_grid, hm_wos
from koenigs.harmonic.closed_form import crosscut_geodesic, inverse_slit_disk, slit_disk
from koenigs.harmonic.wos import Target
from koenigs.semigroup import (
    CanonicalDomain,
    gap_half_plane,
    gap_sector,
    gap_shifted_strip,
    gap_strip,
    sector_staircase,
    trajectory_symmetric,
)
from koenigs.transform import domain_issubset, intersect_domain, polarize, reflect, steiner, union_domain
from koenigs.verify import (
    EXACT_TOL,
    arctan_identity_check,
    check_baernstein,
    check_diam,
    check_scalars,
    check_theorem1,
    check_theorem2,
)

from .conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance

STRIP = StaircaseDomain((), (IntervalSet(((-1.0, 1.0),)),))
HALF_PLANE = StaircaseDomain((-1.0,), (IntervalSet(), IntervalSet(((-INF, INF),))))
SUITE_SEED = 2024
T_HEAD = (0.0, 1.0, 2.0, 4.0, 8.0, 16.0)


def _emit(line):
    print(line)
    ACCEPTANCE_LINES.append(line)


@contextmanager
def criterion(num, title, budget):
    info = {"detail": ""}
    t0 = time.perf_counter()
    try:
        yield info
    except BaseException:
        _emit(f"[acceptance {num}] FAIL {title} ({time.perf_counter() - t0:.1f}s) {info['detail']}")
        raise
    dt = time.perf_counter() - t0
    ok = dt <= budget
    _emit(f"[acceptance {num}] {'PASS' if ok else 'FAIL'} {title} ({dt:.1f}s, budget {budget}s) {info['detail']}")
    assert ok, f"criterion {num} over budget: {dt:.1f}s > {budget}s"


def test_1_closed_form_coherence():
    with criterion(1, "closed-form grid suites", 5) as info:
        r = np.linspace(0.0, 1.0, 10_002)[1:-1]
        sd = np.array([slit_disk(x) for x in r])
        assert np.all(np.diff(sd) < 0)
        assert slit_disk(3 - 2 * math.sqrt(2)) == pytest.approx(0.5, abs=1e-14)
        roundtrip = max(abs(inverse_slit_disk(w) - x) for x, w in zip(r[50:-50:10], sd[50:-50:10]))
        assert roundtrip <= 1e-12

        rr = np.linspace(0.01, 0.99, 10_000)
        two_forms = max(abs(crosscut_geodesic(x) - 2 / math.pi * math.atan((1 - x * x) / (2 * x))) for x in rr)
        assert two_forms <= 1e-12

        diam = check_diam(np.linspace(1e-4, 1 - 1e-4, 10_000))
        assert diam.passed

        xs = np.linspace(0.0, 10.0, 10_001)[1:]
        ident = max(abs(a - b) for a, b in map(arctan_identity_check, xs))
        assert ident <= 1e-14

        scal = check_scalars(10_000)
        assert scal.passed, [c.as_dict() for c in scal.checks if not c.passed]
        # strict decrease of psi, without the exact-rule tolerance
        assert next(c for c in scal.checks if c.name == "PSI_DECREASING").rhs > 0.0
        info["detail"] = f"inverse {roundtrip:.1e}, crosscut forms {two_forms:.1e}, arctan {ident:.1e}"


def test_2_transform_algebra():
    with criterion(2, "transform algebra on 100 random domains", 5) as info:
        doms = random_suite(SUITE_SEED, 100)
        probes = np.arange(-40, 41) / 8 + 1 / 32
        for d in doms:
            sh, po = steiner(d), polarize(d)
            assert steiner(sh) == sh and polarize(po) == po
            assert reflect(sh) == sh
            assert validate(sh).ok and validate(po).ok
            assert domain_issubset(intersect_domain(d, reflect(d)), po)
            assert domain_issubset(po, union_domain(d, reflect(d)))
            for x in probes:
                n = cross_section(d, x).total_length()
                assert cross_section(sh, x).total_length() == n
                assert cross_section(po, x).total_length() == n
        info["detail"] = f"{len(doms)} domains, {len(probes)} probe abscissae each"


def test_3_estimator_calibration():
    with criterion(3, "walk-on-spheres vs grid on 6 fixtures", 180) as info:
        band, _ = left_component(HALF_PLANE, 1.0)
        slit = [Segment.ray(1.0)]
        cases = [
            ("strip", STRIP, [], Target.horizontal(1.0)),
            ("strip+slit", STRIP, slit, Target.slits()),
            ("half-plane", band, [], Target.vertical(1.0)),
            ("half-plane+slit", HALF_PLANE, slit, Target.slits()),
            ("fig1", fig1(), [], Target.horizontal(1.5)),
            ("fig1+slit", fig1(), slit, Target.slits()),
        ]
        params = WosParams(n_samples=1_000_000, seed=1)
        worst = 0.0
        for name, dom, slits, target in cases:
            est = hm_wos(dom, slits, (0.0, 0.0), target, params)
            ref = hm_grid(dom, slits, (0.0, 0.0), target, h=1 / 64)
            err = abs(est.value - ref)
            assert err <= max(3 * est.stderr, 5e-3), (name, est, ref)
            worst = max(worst, err)
        half = hm_wos(STRIP, [], (0.0, 0.0), Target.horizontal(1.0), params)
        assert abs(half.value - 0.5) <= 3 * half.stderr
        info["detail"] = f"max |wos - grid| = {worst:.2e}; strip top {half.value:.5f}"


def test_4_trajectory_cross_validation():
    with criterion(4, "slit inversion vs closed forms", 180) as info:
        params = WosParams(n_samples=400_000, seed=5)
        worst = 0.0
        for dom in (CanonicalDomain("strip", (1.0,)), CanonicalDomain("half_plane", (1.0,))):
            stair = dom.to_staircase()
            for t in (0.5, 1.0, 2.0, 4.0):
                p = trajectory_symmetric(stair, t, params)
                err = abs(p.gap - dom.gap(t).gap)
                assert err <= max(3 * p.stderr_gap, 2e-3), (dom.describe(), t, p)
                worst = max(worst, err)
        sector_worst = 0.0
        for t in (1.0, 2.0):
            p = trajectory_symmetric(sector_staircase(2.0, t + 50.0, 0.01), t, WosParams(n_samples=100_000, seed=5))
            err = abs(p.gap - gap_sector(2.0, t).gap)
            assert err <= 2e-2
            sector_worst = max(sector_worst, err)
        info["detail"] = f"strip/half-plane max err {worst:.2e}; sector max err {sector_worst:.2e}"


def test_5_theorem1():
    with criterion(5, "Theorem 1 head pairs and proof chain", 600) as info:
        heads = [
            check_theorem1(CanonicalDomain("quadrant", (1.0,)), T_HEAD),
            check_theorem1(CanonicalDomain("shifted_strip", (0.25, 0.75)), T_HEAD),
            check_theorem1(CanonicalDomain("shifted_strip", (0.5, 1.5)), T_HEAD),
        ]
        for rep in heads:
            assert rep.passed and len(rep.checks) == 6
            assert all(c.tolerance_rule == "exact" and c.tolerance == EXACT_TOL for c in rep.checks)
        # the closed forms behind the canonical records
        for t in T_HEAD:
            assert gap_shifted_strip(0.25, 0.75, t).gap <= 4 * math.pi * gap_strip(0.5, t).gap + EXACT_TOL
        params = WosParams(n_samples=100_000, seed=17)
        n = escalated = 0
        for d in random_suite(SUITE_SEED, 10):
            rep = check_theorem1(d, (0.5, 1.5, 3.0), params)
            links = [c for c in rep.checks if c.name in ("L1", "L2", "L3", "L4")]
            assert len(links) == 12 and rep.passed, [c.as_dict() for c in rep.checks if not c.passed]
            n += len(links)
            escalated += sum(c.escalated for c in rep.checks)
        info["detail"] = f"18 head records; {n} chain links, {escalated} escalated"


def test_6_theorem2():
    with criterion(6, "polarization inequality and Theorem 2 head pairs", 600) as info:
        for dom in (CanonicalDomain("quadrant", (-1.0,)), CanonicalDomain("shifted_strip", (1.5, 0.5)),
                    CanonicalDomain("shifted_strip", (0.75, 0.25))):
            rep = check_theorem2(dom, T_HEAD)
            assert rep.passed and len(rep.checks) == 6
        params = WosParams(n_samples=100_000, seed=23)
        n = escalated = 0
        for d in random_suite(SUITE_SEED, 10):
            rep = check_theorem2(d, (0.5, 1.5, 3.0), params)
            assert len(rep.checks) == 3 and rep.passed, [c.as_dict() for c in rep.checks if not c.passed]
            n += len(rep.checks)
            escalated += sum(c.escalated for c in rep.checks)
        info["detail"] = f"18 head records; {n} P1 records, {escalated} escalated"


def test_7_baernstein():
    with criterion(7, "Baernstein suite on 20 random domains", 600) as info:
        params = WosParams(n_samples=100_000, seed=29)
        n = escalated = 0
        for d in random_suite(SUITE_SEED, 20):
            for t in (1.0, 2.5):
                rep = check_baernstein(d, t, params)
                assert rep.passed, [c.as_dict() for c in rep.checks]
                n += 1
                escalated += rep.checks[0].escalated
        info["detail"] = f"{n} records, {escalated} escalated"


def _cli(args, threads):
    env = dict(os.environ, KOENIGS_THREADS=str(threads))
    out = subprocess.run([sys.executable, "-m", "koenigs", *args], capture_output=True, env=env)
    assert out.returncode == 0, out.stderr
    return out.stdout


def test_8_determinism(tmp_path):
    with criterion(8, "byte-identical verify and hm output across worker counts", 600) as info:
        runs = [
            ["hm", "--domain", "fixture:fig1", "--slit", "2", "--samples", "200000", "--seed", "7"],
            ["verify", "--check", "t1", "--domain", "random:5:2", "--t-grid", "1,2", "--samples", "20000"],
            ["verify", "--check", "baernstein", "--domain", "fixture:fig1", "--t-grid", "1.5",
             "--samples", "20000", "--format", "csv"],
        ]
        for args in runs:
            outs = {_cli(args, k) for k in (1, 1, 2, 4)}
            assert len(outs) == 1
        info["detail"] = f"{len(runs)} configs x thread counts 1, 1, 2, 4"


def _loglog_slope(fn, t0, t1, n=200):
    t = np.geomspace(t0, t1, n)
    return np.polyfit(np.log(t), np.log([fn(x).gap for x in t]), 1)[0]


def test_9_asymptotic_exponents():
    with criterion(9, "asymptotic decay exponents", 60) as info:
        slope = _loglog_slope(lambda t: gap_sector(2.0, t), 1e2, 1e4)
        assert slope == pytest.approx(-2.0, rel=0.02)
        rates = []
        for a in (0.5, 1.0, 2.0):
            t = np.linspace(5.0, 20.0, 200)
            rate = np.polyfit(t, np.log([gap_strip(a, x).gap for x in t]), 1)[0]
            assert rate == pytest.approx(-math.pi / (2 * a), rel=0.01)
            rates.append(rate * 2 * a / math.pi)
        hp = _loglog_slope(lambda t: gap_half_plane(1.0, t), 1e2, 1e4)
        info["detail"] = (f"sector slope {slope:.4f}; strip rate / (-pi/2a) "
                          f"{', '.join(f'{r:.4f}' for r in rates)}; half-plane slope {hp:.4f}")
