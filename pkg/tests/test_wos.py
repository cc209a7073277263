import math

import pytest

from koenigs.fixtures import fig1, fig1_steiner
from koenigs.geom import INF, DomainError, IntervalSet, Segment, StaircaseDomain, left_component
from koenigs.harmonic import HMEstimate, WosParams, hm_wos, slit_disk, slit_measure
from koenigs.harmonic.wos import Target, characteristic_length, default_eps, exit_tally

STRIP = StaircaseDomain((), (IntervalSet(((-1.0, 1.0),)),))
HALF_PLANE = StaircaseDomain((-1.0,), (IntervalSet(), IntervalSet(((-INF, INF),))))
P = WosParams(n_samples=100_000, seed=42)


def within(est, exact, k=3.0, floor=0.0):
    return abs(est.value - exact) <= max(k * est.stderr, floor)


def test_params_validation():
    with pytest.raises(ValueError):
        WosParams(n_samples=0)
    with pytest.raises(ValueError):
        WosParams(eps=0.0)
    with pytest.raises(ValueError):
        WosParams(max_steps=0)
    assert WosParams(n_samples=10).scaled(4).n_samples == 40


def test_estimate_invariants():
    with pytest.raises(ValueError):
        HMEstimate(value=1.5, stderr=0.0, n_samples=1, method="wos")


def test_target_parse():
    assert Target.parse("slit") == Target.slits()
    assert Target.parse("x=2") == Target.vertical(2.0)
    assert Target.parse("y=-1") == Target.horizontal(-1.0)
    assert Target.parse("seg:0,3") == Target.features([0, 3])
    with pytest.raises(ValueError):
        Target.parse("banana")


def test_strip_top_line_half():
    est = hm_wos(STRIP, [], (0.0, 0.0), Target.horizontal(1.0), P)
    assert within(est, 0.5)
    assert est.stderr == pytest.approx(math.sqrt(est.value * (1 - est.value) / P.n_samples))
    assert est.method == "wos" and est.eps == default_eps(STRIP)


def test_half_plane_slit_closed_form():
    est = slit_measure(HALF_PLANE, 1.0, P)
    assert within(est, 1 / 3)
    assert est.censored_fraction == 0.0


def test_strip_slit_closed_form():
    est = slit_measure(STRIP, 1.0, P)
    assert within(est, slit_disk(math.tanh(math.pi / 4)))


def test_additivity_over_a_partition():
    tally = exit_tally(fig1(), [Segment.ray(1.0)], (0.0, 0.0), P)
    slit = tally.estimate(Target.slits()).value
    rest = tally.estimate(Target("boundary")).value
    assert slit + rest + tally.censored / P.n_samples == 1.0


def test_monotone_in_the_domain():
    # nested strips sharing the slit
    small = StaircaseDomain((), (IntervalSet(((-0.5, 0.5),)),))
    a = slit_measure(small, 1.0, P)
    b = slit_measure(STRIP, 1.0, P)
    assert a.value <= b.value + 3 * math.hypot(a.stderr, b.stderr)


def test_crosscut_measure_in_bounded_component():
    comp, _ = left_component(fig1_steiner(), 3.0)
    est = hm_wos(comp, [], (0.0, 0.0), Target.vertical(3.0), P)
    assert 0.0 < est.value < 0.05
    assert est.censored_fraction < 1e-3


def test_determinism_and_seed_sensitivity():
    a = slit_measure(fig1(), 1.0, WosParams(n_samples=20_000, seed=9))
    b = slit_measure(fig1(), 1.0, WosParams(n_samples=20_000, seed=9))
    c = slit_measure(fig1(), 1.0, WosParams(n_samples=20_000, seed=10))
    assert a == b
    assert a.value != c.value


def test_backends_statistically_equal():
    a = slit_measure(fig1(), 1.0, WosParams(n_samples=20_000, seed=1), kernel="python")
    b = slit_measure(fig1(), 1.0, WosParams(n_samples=20_000, seed=1))
    assert abs(a.value - b.value) <= 3 * math.hypot(a.stderr, b.stderr)


def test_censoring_by_max_steps_counts_as_miss():
    est = hm_wos(STRIP, [], (0.0, 0.0), Target.horizontal(1.0),
                 WosParams(n_samples=2000, seed=0, max_steps=2))
    assert est.censored_fraction > 0.5
    assert est.value < 0.5


def test_right_cap_censors():
    est = hm_wos(HALF_PLANE, [], (0.0, 0.0), Target.vertical(-1.0),
                 WosParams(n_samples=2000, seed=0, right_cap=2.0, max_steps=1000))
    assert est.censored_fraction > 0.0


def test_errors():
    with pytest.raises(DomainError):
        hm_wos(STRIP, [], (0.0, 2.0), Target.horizontal(1.0), P)
    with pytest.raises(DomainError):
        hm_wos(STRIP, [Segment.ray(-1.0)], (0.0, 0.0), Target.slits(), P)
    with pytest.raises(ValueError):
        hm_wos(STRIP, [], (0.0, 0.0), Target.vertical(5.0), P)
    with pytest.raises(ValueError):
        hm_wos(STRIP, [], (0.0, 0.0), Target.features([17]), P)


def test_characteristic_length():
    assert characteristic_length(STRIP) == 2.0
    assert characteristic_length(fig1()) == 1.5
    assert characteristic_length(HALF_PLANE) == 1.0
