import math

import pytest

from koenigs.fixtures import fig1
from koenigs.geom import INF, DomainError, IntervalSet, Segment, StaircaseDomain, left_component
from koenigs.harmonic import hm_grid, slit_disk
from koenigs.harmonic.grid import build_axis
from koenigs.harmonic.wos import Target

STRIP = StaircaseDomain((), (IntervalSet(((-1.0, 1.0),)),))
HALF_PLANE = StaircaseDomain((-1.0,), (IntervalSet(), IntervalSet(((-INF, INF),))))


def half_strip_crosscut_exact(t, terms=200):
    """Separation-of-variables series for the end of {x < t, |y| < 1} seen from 0."""
    return sum(4 / (k * math.pi) * (-1) ** ((k - 1) // 2) * math.exp(-k * math.pi * t / 2)
               for k in range(1, 2 * terms, 2))


def test_axis_contains_keys_and_grows():
    ax = build_axis([0.3, -0.7, 2.0], -50.0, 50.0, 1 / 16, (-1.0, 3.0))
    for k in (0.3, -0.7, 2.0, -50.0, 50.0):
        assert k in ax
    steps = [b - a for a, b in zip(ax, ax[1:])]
    assert all(s > 0 for s in steps)
    assert max(steps) > 1.0  # graded far field
    assert max(s for a, s in zip(ax, steps) if -1.0 <= a and a + s <= 3.0) <= 1 / 16 + 1e-12


def test_strip_top_line_is_half():
    v = hm_grid(STRIP, [], (0.0, 0.0), Target.horizontal(1.0), h=1 / 64)
    assert v == pytest.approx(0.5, abs=5e-3)


def test_half_strip_crosscut_second_order():
    comp, _ = left_component(STRIP, 2.0)
    exact = half_strip_crosscut_exact(2.0)
    v = [hm_grid(comp, [], (0.0, 0.0), Target.vertical(2.0), h=h) for h in (1 / 16, 1 / 32, 1 / 64)]
    ratio = (v[0] - v[1]) / (v[1] - v[2])
    assert ratio == pytest.approx(4.0, abs=0.3)
    assert v[2] == pytest.approx(exact, abs=1e-5)


def test_slit_in_strip_first_order_near_tip():
    # the sqrt singularity at the slit tip limits the stencil to first order
    exact = slit_disk(math.tanh(math.pi / 4))
    v = [hm_grid(STRIP, [Segment.ray(1.0)], (0.0, 0.0), Target.slits(), h=h)
         for h in (1 / 16, 1 / 32, 1 / 64)]
    ratio = (v[0] - v[1]) / (v[1] - v[2])
    assert 1.6 < ratio < 2.6
    assert abs(v[2] - exact) < 5e-3
    assert abs(v[2] - exact) < abs(v[1] - exact) < abs(v[0] - exact)


def test_half_plane_slit_against_conformal_value():
    # the orbit point for Re z > -1 is t / (t + 2); at t = 1 the slit measure is 1/3
    v = hm_grid(HALF_PLANE, [Segment.ray(1.0)], (0.0, 0.0), Target.slits(), h=1 / 64)
    assert v == pytest.approx(slit_disk(1 / 3), abs=5e-3)
    assert slit_disk(1 / 3) == pytest.approx(1 / 3, abs=1e-15)


def test_half_plane_band_is_linear():
    comp, _ = left_component(HALF_PLANE, 1.0)
    v = hm_grid(comp, [], (0.0, 0.0), Target.vertical(1.0), h=1 / 32)
    assert v == pytest.approx(0.5, abs=1e-3)


def test_truncation_insensitive_to_far_field():
    a = hm_grid(STRIP, [Segment.ray(1.0)], (0.0, 0.0), Target.slits(), h=1 / 32)
    b = hm_grid(STRIP, [Segment.ray(1.0)], (0.0, 0.0), Target.slits(), h=1 / 32, far=160.0)
    assert a == pytest.approx(b, abs=1e-5)


def test_deterministic():
    args = (fig1(), [Segment.ray(1.0)], (0.0, 0.0), Target.slits())
    assert hm_grid(*args, h=1 / 32) == hm_grid(*args, h=1 / 32)


def test_resolution_error():
    narrow = StaircaseDomain((), (IntervalSet(((-1.0, 1.0), (1.5, 1.55))),))
    with pytest.raises(DomainError):
        hm_grid(narrow, [], (0.0, 0.0), Target.horizontal(1.0), h=1 / 32)


def test_missing_target():
    with pytest.raises(ValueError):
        hm_grid(STRIP, [], (0.0, 0.0), Target.vertical(3.0), h=1 / 16)
