"""Closed-form harmonic measures in the unit disk."""
from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi


def arc_measure(arc_length: float) -> float:
    """Harmonic measure at 0 of a boundary set of the given total arc length."""
    if not 0.0 <= arc_length <= TWO_PI:
        raise ValueError("arc length must lie in [0, 2*pi]")
    return arc_length / TWO_PI


def slit_disk(r: float) -> float:
    """Harmonic measure at 0 of the radial slit [r, 1] in D minus that slit."""
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    return 2.0 / math.pi * math.atan((1.0 - r) / (2.0 * math.sqrt(r)))


def slit_disk_derivative(r: float) -> float:
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    return -2.0 / (math.pi * math.sqrt(r) * (1.0 + r))


def inverse_slit_disk(w: float, tol: float = 1e-14) -> float:
    """The unique r in (0, 1) with slit_disk(r) = w, by bisection."""
    if not 0.0 < w < 1.0:
        raise ValueError("w must lie in (0, 1)")
    lo, hi = 0.0, 1.0
    # slit_disk is decreasing: large values live near r = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= 0.0 or mid >= 1.0:
            break
        if slit_disk(mid) > w:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def crosscut_geodesic(r: float) -> float:
    """Harmonic measure at 0 of the geodesic through r orthogonal to (-1, 1),
    seen from the component of the disk containing 0."""
    if not -1.0 < r < 1.0:
        raise ValueError("|r| must be < 1")
    a = abs(r)
    return 1.0 - 2.0 / math.pi * math.atan(2.0 * a / (1.0 - a * a))


def diam_bound(d: float) -> float:
    """Lower bound (1/pi) arcsin(d/2) for the measure of a Jordan arc of diameter d."""
    if not 0.0 <= d <= 2.0:
        raise ValueError("d must lie in [0, 2]")
    return math.asin(d / 2.0) / math.pi
