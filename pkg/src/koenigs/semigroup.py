"""Semigroup orbits of 0 and their distance to the Denjoy-Wolff point.

For the canonical Koenigs domains the Koenigs map is explicit, so the orbit
``phi_t(0) = h^{-1}(t)`` and the gap ``|phi_t(0) - tau|`` are closed forms
(with tau rotated to 1).  For any staircase domain symmetric about the real
axis the half-line ``[t, inf)`` is a hyperbolic geodesic, so its preimage is a
radial slit ``[phi_t(0), 1)`` and ``phi_t(0)`` is recovered by inverting the
disk slit formula on a Monte Carlo estimate of the slit's harmonic measure.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .geom import INF, DomainError, IntervalSet, StaircaseDomain, require_valid
from .harmonic.closed_form import inverse_slit_disk, slit_disk_derivative
from .harmonic.wos import WosParams, slit_measure


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    gap: float
    method: str
    phi0: float | None = None
    stderr_gap: float = 0.0

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if not 0.0 <= self.gap <= 2.0:
            raise ValueError(f"gap out of range: {self.gap}")

    def as_row(self) -> dict:
        return {"t": self.t, "phi0": "" if self.phi0 is None else self.phi0,
                "gap": self.gap, "stderr_gap": self.stderr_gap, "method": self.method}


def _check_t(t):
    if not t >= 0:
        raise ValueError("t must be >= 0")


def _one_minus_tanh(x):
    # 1 - tanh(x) without cancellation; x may be complex
    return 2.0 / (1.0 + cmath.exp(2.0 * x)) if isinstance(x, complex) else 2.0 / (1.0 + math.exp(2.0 * x))


def gap_half_plane(d: float, t: float) -> TrajectoryPoint:
    """Omega = {Re z > -d}: phi_t(0) = t / (t + 2d)."""
    if not d > 0:
        raise ValueError("d must be positive")
    _check_t(t)
    return TrajectoryPoint(t=t, phi0=t / (t + 2.0 * d), gap=2.0 * d / (t + 2.0 * d), method="closed_form")


def gap_strip(a: float, t: float) -> TrajectoryPoint:
    """Omega = {|Im z| < a}: phi_t(0) = tanh(pi t / 4a)."""
    if not a > 0:
        raise ValueError("a must be positive")
    _check_t(t)
    x = math.pi * t / (4.0 * a)
    return TrajectoryPoint(t=t, phi0=math.tanh(x), gap=_one_minus_tanh(x), method="closed_form")


def _shifted_strip_center(a, b):
    c = (b - a) / 2.0
    s = (a + b) / 2.0
    return c, s, -1j * math.tan(math.pi * c / (4.0 * s))


def gap_shifted_strip(a: float, b: float, t: float) -> TrajectoryPoint:
    """Omega = {-a < Im z < b}; only the gap is reported (the orbit is not real)."""
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be positive")
    _check_t(t)
    c, s, z0 = _shifted_strip_center(a, b)
    w = math.pi * (t - 1j * c) / (4.0 * s)
    zeta_minus_one = -_one_minus_tanh(w)
    zb = z0.conjugate()
    diff = zeta_minus_one * (1.0 - abs(z0) ** 2) / ((1.0 - zb * (1.0 + zeta_minus_one)) * (1.0 - zb))
    return TrajectoryPoint(t=t, gap=abs(diff), method="closed_form")


def sector_exponent(c: float) -> float:
    return math.pi / (2.0 * math.atan(c / 2.0))


def gap_sector(c: float, t: float) -> TrajectoryPoint:
    """Omega = {x > -1, |y| < c (x + 1) / 2}."""
    if not c > 0:
        raise ValueError("c must be positive")
    _check_t(t)
    p = (t + 1.0) ** sector_exponent(c)
    return TrajectoryPoint(t=t, phi0=(p - 1.0) / (p + 1.0), gap=2.0 / (p + 1.0), method="closed_form")


def gap_quadrant(sign: int, t: float) -> TrajectoryPoint:
    """Omega = {x > -1, y > -1} (sign +1) or its reflection {x > -1, y < 1} (sign -1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_t(t)
    z = complex(t + 1.0, 1.0) ** 2 + 2j
    if sign < 0:
        z = z.conjugate()
    return TrajectoryPoint(t=t, gap=4.0 / abs(z), method="closed_form")


# ---------------------------------------------------------------------------
# Canonical domains
# ---------------------------------------------------------------------------

KINDS = ("half_plane", "strip", "shifted_strip", "sector", "quadrant")


@dataclass(frozen=True)
class CanonicalDomain:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown canonical kind {self.kind!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        need = {"half_plane": 1, "strip": 1, "shifted_strip": 2, "sector": 1, "quadrant": 1}[self.kind]
        if len(params) != need:
            raise ValueError(f"{self.kind} takes {need} parameter(s)")
        if self.kind == "quadrant":
            if params[0] not in (1.0, -1.0):
                raise ValueError("quadrant sign must be +1 or -1")
        elif any(not p > 0 for p in params):
            raise ValueError("canonical parameters must be positive")

    @classmethod
    def parse(cls, text: str) -> "CanonicalDomain":
        parts = text.split(":")
        if parts and parts[0] == "canonical":
            parts = parts[1:]
        if not parts:
            raise ValueError("empty canonical descriptor")
        kind, args = parts[0], parts[1:]
        if kind == "quadrant":
            sign = {"": 1.0, "+": 1.0, "+1": 1.0, "1": 1.0, "-": -1.0, "-1": -1.0}
            return cls(kind, (sign[args[0] if args else ""],))
        if kind == "strip" and not args:
            args = ["1"]
        if kind == "half_plane" and not args:
            args = ["1"]
        return cls(kind, tuple(float(a) for a in args))

    def describe(self) -> str:
        if self.kind == "quadrant":
            return "canonical:quadrant:" + ("+" if self.params[0] > 0 else "-")
        return "canonical:" + ":".join([self.kind] + [repr(p) for p in self.params])

    def gap(self, t: float) -> TrajectoryPoint:
        p = self.params
        if self.kind == "half_plane":
            return gap_half_plane(p[0], t)
        if self.kind == "strip":
            return gap_strip(p[0], t)
        if self.kind == "shifted_strip":
            return gap_shifted_strip(p[0], p[1], t)
        if self.kind == "sector":
            return gap_sector(p[0], t)
        return gap_quadrant(int(p[0]), t)

    def steiner(self) -> "CanonicalDomain":
        if self.kind == "shifted_strip":
            return CanonicalDomain("strip", ((self.params[0] + self.params[1]) / 2.0,))
        if self.kind == "quadrant":
            return CanonicalDomain("half_plane", (1.0,))
        return self

    def polarize(self) -> "CanonicalDomain":
        if self.kind == "shifted_strip":
            a, b = self.params
            return CanonicalDomain("shifted_strip", (min(a, b), max(a, b)))
        if self.kind == "quadrant":
            return CanonicalDomain("quadrant", (1.0,))
        return self

    def to_staircase(self, x_max: float = 50.0, delta: float = 0.01) -> StaircaseDomain:
        """Exact staircase representation; the sector is approximated with
        pieces of width ``delta`` up to ``x_max``."""
        p = self.params
        if self.kind == "half_plane":
            return StaircaseDomain((-p[0],), (IntervalSet(), IntervalSet(((-INF, INF),))))
        if self.kind == "strip":
            return StaircaseDomain((), (IntervalSet(((-p[0], p[0]),)),))
        if self.kind == "shifted_strip":
            return StaircaseDomain((), (IntervalSet(((-p[0], p[1]),)),))
        if self.kind == "quadrant":
            iv = (-1.0, INF) if p[0] > 0 else (-INF, 1.0)
            return StaircaseDomain((-1.0,), (IntervalSet(), IntervalSet((iv,))))
        return sector_staircase(p[0], x_max, delta)

    # Koenigs maps, normalized by h(0) = 0 and h(1) = +inf

    def koenigs_inverse(self, w: complex) -> complex:
        """h^{-1}: Omega -> D."""
        p = self.params
        if self.kind == "half_plane":
            return w / (w + 2.0 * p[0])
        if self.kind == "strip":
            return cmath.tanh(math.pi * w / (4.0 * p[0]))
        if self.kind == "shifted_strip":
            c, s, z0 = _shifted_strip_center(*p)
            z = cmath.tanh(math.pi * (w - 1j * c) / (4.0 * s))
            return (z - z0) / (1.0 - z0.conjugate() * z)
        if self.kind == "sector":
            q = (w + 1.0) ** sector_exponent(p[0])
            return (q - 1.0) / (q + 1.0)
        zeta = (w + 1.0 + 1j) ** 2 if p[0] > 0 else ((w.conjugate() if isinstance(w, complex) else w) + 1.0 + 1j) ** 2
        z = (zeta - 2j) / (zeta + 2j)
        return z if p[0] > 0 else z.conjugate()

    def koenigs(self, z: complex) -> complex:
        """h: D -> Omega."""
        p = self.params
        z = complex(z)
        if self.kind == "half_plane":
            return 2.0 * p[0] * z / (1.0 - z)
        if self.kind == "strip":
            return 4.0 * p[0] / math.pi * cmath.atanh(z)
        if self.kind == "shifted_strip":
            c, s, z0 = _shifted_strip_center(*p)
            u = (z + z0) / (1.0 + z0.conjugate() * z)
            return 1j * c + 4.0 * s / math.pi * cmath.atanh(u)
        if self.kind == "sector":
            return ((1.0 + z) / (1.0 - z)) ** (1.0 / sector_exponent(p[0])) - 1.0
        zz = z if p[0] > 0 else z.conjugate()
        zeta = 2j * (1.0 + zz) / (1.0 - zz)
        w = cmath.sqrt(zeta) - 1.0 - 1j
        return w if p[0] > 0 else w.conjugate()

    def tau(self) -> complex:
        """Denjoy-Wolff point in the normalization used by ``koenigs_inverse``."""
        if self.kind == "shifted_strip":
            z0 = _shifted_strip_center(*self.params)[2]
            return (1.0 - z0) / (1.0 - z0.conjugate())
        return 1.0 + 0j

    def phi(self, t: float, z: complex = 0.0) -> complex:
        return self.koenigs_inverse(self.koenigs(z) + t)


def sector_staircase(c: float, x_max: float, delta: float = 0.01) -> StaircaseDomain:
    """Staircase approximation of {x > -1, |y| < c (x + 1) / 2}: pieces of width
    ``delta`` on (-1, x_max) with the half-width taken at each piece's midpoint,
    constant beyond ``x_max``."""
    n = max(1, int(round((x_max + 1.0) / delta)))
    bps = [-1.0 + k * delta for k in range(n + 1)]
    secs = [IntervalSet()]
    for k in range(n):
        half = c * (0.5 * (bps[k] + bps[k + 1]) + 1.0) / 2.0
        secs.append(IntervalSet(((-half, half),)))
    half = c * (bps[-1] + 1.0) / 2.0
    secs.append(IntervalSet(((-half, half),)))
    return StaircaseDomain(tuple(bps), tuple(secs))


def trajectory_symmetric(domain: StaircaseDomain, t: float,
                         params: WosParams = WosParams(), kernel: str | None = None) -> TrajectoryPoint:
    """phi_t(0) for a symmetric staircase Koenigs domain by slit inversion.

    A degenerate estimate (no hits, or all hits) is clipped to half a sample
    so the inverse map stays finite.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    require_valid(domain)
    if not domain.is_symmetric():
        raise DomainError("slit inversion needs a domain symmetric about the real axis")
    if t == 0:
        return TrajectoryPoint(t=0.0, phi0=0.0, gap=1.0, method="slit_inversion")
    est = slit_measure(domain, t, params, kernel)
    n = est.n_samples
    w = min(max(est.value, 0.5 / n), 1.0 - 0.5 / n)
    r = inverse_slit_disk(w)
    stderr = max(est.stderr, math.sqrt(w * (1.0 - w) / n)) / abs(slit_disk_derivative(r))
    return TrajectoryPoint(t=t, phi0=r, gap=1.0 - r, method="slit_inversion", stderr_gap=stderr)
