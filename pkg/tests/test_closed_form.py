import math

import numpy as np
import pytest

from koenigs.harmonic.closed_form import (
    arc_measure,
    crosscut_geodesic,
    diam_bound,
    inverse_slit_disk,
    slit_disk,
    slit_disk_derivative,
)

from . import oracles

R_STAR = 3.0 - 2.0 * math.sqrt(2.0)  # (1 - r) / (2 sqrt r) = 1


@pytest.mark.parametrize("length, want", [(2 * math.pi, 1.0), (math.pi, 0.5), (0.0, 0.0)])
def test_arc_measure(length, want):
    assert arc_measure(length) == want


def test_arc_measure_range():
    with pytest.raises(ValueError):
        arc_measure(7.0)


def test_slit_disk_anchor_and_limits():
    assert slit_disk(R_STAR) == pytest.approx(0.5, abs=1e-15)
    assert slit_disk(1 - 1e-12) == pytest.approx(0.0, abs=1e-5)
    assert slit_disk(1e-12) == pytest.approx(1.0, abs=1e-5)
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            slit_disk(bad)


def test_slit_disk_strictly_decreasing():
    r = np.linspace(0, 1, 10_002)[1:-1]
    v = np.array([slit_disk(x) for x in r])
    assert np.all(np.diff(v) < 0)


def test_slit_derivative_matches_finite_difference():
    for r in (0.05, 0.3, 0.8):
        h = 1e-6
        fd = (slit_disk(r + h) - slit_disk(r - h)) / (2 * h)
        assert slit_disk_derivative(r) == pytest.approx(fd, rel=1e-7)


def test_inverse_roundtrip():
    assert inverse_slit_disk(slit_disk(0.37)) == pytest.approx(0.37, abs=1e-12)


def test_inverse_matches_closed_form_oracle():
    for w in np.linspace(0.001, 0.999, 200):
        assert inverse_slit_disk(w) == pytest.approx(oracles.slit_inverse_exact(w), abs=1e-13)


def test_inverse_domain():
    for bad in (0.0, 1.0):
        with pytest.raises(ValueError):
            inverse_slit_disk(bad)


def test_crosscut_geodesic_values():
    assert crosscut_geodesic(0.0) == 1.0
    assert crosscut_geodesic(math.sqrt(2) - 1) == pytest.approx(0.5, abs=1e-15)
    assert crosscut_geodesic(0.5) == pytest.approx(1 - 2 / math.pi * math.atan(4 / 3), abs=1e-15)
    with pytest.raises(ValueError):
        crosscut_geodesic(1.0)


def test_crosscut_geodesic_equals_reciprocal_form_on_positive_r():
    for r in np.linspace(0.01, 0.99, 500):
        alt = 2 / math.pi * math.atan((1 - r * r) / (2 * r))
        assert crosscut_geodesic(r) == pytest.approx(alt, abs=1e-12)


def test_crosscut_geodesic_even_and_decreasing():
    r = np.linspace(0, 1, 10_002)[1:-1]
    v = np.array([crosscut_geodesic(x) for x in r])
    assert np.all(np.diff(v) < 0)
    assert all(crosscut_geodesic(-x) == crosscut_geodesic(x) for x in r[::97])
    assert all(0.0 <= crosscut_geodesic(-x) <= 1.0 for x in r[::97])


@pytest.mark.parametrize("d, want", [(2.0, 0.5), (1.0, 1 / 6), (0.0, 0.0)])
def test_diam_bound(d, want):
    assert diam_bound(d) == pytest.approx(want, abs=1e-15)


def test_diam_bound_range():
    with pytest.raises(ValueError):
        diam_bound(2.5)
