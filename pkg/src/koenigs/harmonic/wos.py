"""Walk-on-spheres estimation of harmonic measure on staircase domains.

Each walk jumps to a uniform point on the largest circle centred at the
current position that avoids the boundary and the slits.  Once the walker is
within ``eps`` of a feature it is absorbed there.  The estimate of
``omega(z0, target, domain minus slits)`` is the fraction of walks absorbed on
target features; its standard error is binomial.

Walks exceeding ``max_steps`` or crossing ``right_cap`` are censored and
counted as misses, so censoring biases estimates downward only.  The per-step
cost is proportional to the number of boundary elements in the cells scanned
(see ``table``), not to the total number of segments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ..geom import DomainError, Segment, StaircaseDomain, contains
from . import backend
from .table import WalkTable, build_table


@dataclass(frozen=True)
class WosParams:
    n_samples: int = 100_000
    seed: int = 0
    eps: float | None = None
    max_steps: int = 100_000
    right_cap: float = math.inf

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.eps is not None and not self.eps > 0:
            raise ValueError("eps must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def scaled(self, factor: int) -> "WosParams":
        return replace(self, n_samples=self.n_samples * factor)


@dataclass(frozen=True)
class HMEstimate:
    value: float
    stderr: float
    n_samples: int
    method: str
    eps: float | None = None
    censored_fraction: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"harmonic measure out of range: {self.value}")

    def as_row(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "n": self.n_samples,
            "method": self.method,
            "eps": "" if self.eps is None else self.eps,
            "censored_fraction": self.censored_fraction,
        }


@dataclass(frozen=True)
class Target:
    """Selects boundary features by identity.

    kinds: ``slits`` (every slit), ``boundary`` (every domain boundary
    segment), ``vertical`` (boundary segments on Re z = value), ``horizontal``
    (boundary segments on Im z = value), ``features`` (explicit indices into
    boundary segments followed by slits).
    """

    kind: str
    value: object = None

    @classmethod
    def slits(cls):
        return cls("slits")

    @classmethod
    def vertical(cls, x: float):
        return cls("vertical", float(x))

    @classmethod
    def horizontal(cls, y: float):
        return cls("horizontal", float(y))

    @classmethod
    def features(cls, ids):
        return cls("features", tuple(int(i) for i in ids))

    @classmethod
    def parse(cls, text: str) -> "Target":
        text = text.strip()
        if text in ("slit", "slits"):
            return cls.slits()
        if text == "boundary":
            return cls("boundary")
        if text.startswith("x="):
            return cls.vertical(float(text[2:]))
        if text.startswith("y="):
            return cls.horizontal(float(text[2:]))
        if text.startswith("seg:"):
            return cls.features(int(s) for s in text[4:].split(",") if s)
        raise ValueError(f"unrecognised target {text!r}")

    def resolve(self, features, n_boundary: int) -> np.ndarray:
        ids = []
        for k, seg in enumerate(features):
            is_slit = k >= n_boundary
            if self.kind == "slits":
                ok = is_slit
            elif self.kind == "boundary":
                ok = not is_slit
            elif self.kind == "vertical":
                ok = not is_slit and seg.vertical and seg.x0 == self.value
            elif self.kind == "horizontal":
                ok = not is_slit and seg.horizontal and seg.y0 == self.value
            elif self.kind == "features":
                ok = k in self.value
            else:
                raise ValueError(f"unknown target kind {self.kind!r}")
            if ok:
                ids.append(k)
        if self.kind == "features" and any(not 0 <= i < len(features) for i in self.value):
            raise ValueError("target references a nonexistent feature")
        if not ids:
            raise ValueError(f"target {self.kind}:{self.value} references no boundary feature")
        return np.array(ids, dtype=np.int64)


def characteristic_length(domain: StaircaseDomain) -> float:
    """Length of the interval through the origin when finite, else the
    shortest finite section interval, else 1."""
    sec = domain.sections[domain.piece_index(0.0)]
    iv = sec.interval_containing(0.0)
    if iv is not None and math.isfinite(iv[1] - iv[0]):
        return iv[1] - iv[0]
    finite = [hi - lo for s in domain.sections for lo, hi in s if math.isfinite(hi - lo)]
    return min(finite) if finite else 1.0


def default_eps(domain: StaircaseDomain) -> float:
    return 1e-4 * characteristic_length(domain)


@dataclass(frozen=True)
class ExitTally:
    """Exit counts per feature for one batch of walks."""

    counts: np.ndarray
    censored: int
    n_samples: int
    eps: float
    table: WalkTable

    def estimate(self, target: Target) -> HMEstimate:
        ids = target.resolve(self.table.features, self.table.n_boundary)
        hits = int(self.counts[ids].sum())
        p = hits / self.n_samples
        return HMEstimate(
            value=p,
            stderr=math.sqrt(p * (1.0 - p) / self.n_samples),
            n_samples=self.n_samples,
            method="wos",
            eps=self.eps,
            censored_fraction=self.censored / self.n_samples,
        )


def _check_start(domain, slits, z0):
    x, y = z0
    if not contains(domain, (x, y)):
        raise DomainError(f"start point ({x}, {y}) is not interior to the domain")
    for s in slits:
        if s.contains(x, y, tol=0.0):
            raise DomainError(f"start point ({x}, {y}) lies on a slit")


def exit_tally(domain: StaircaseDomain, slits, z0, params: WosParams = WosParams(),
               kernel: str | None = None, table: WalkTable | None = None) -> ExitTally:
    slits = tuple(slits)
    _check_start(domain, slits, z0)
    table = table or build_table(domain, slits)
    eps = params.eps if params.eps is not None else default_eps(domain)
    run = backend.get_kernel(kernel).run_walks
    out = run(float(z0[0]), float(z0[1]), table, int(params.seed), 0, int(params.n_samples),
              float(eps), int(params.max_steps), float(params.right_cap), backend.thread_count())
    counts = np.bincount(out + 1, minlength=table.n_features + 1)
    return ExitTally(counts=counts[1:], censored=int(counts[0]), n_samples=params.n_samples,
                     eps=eps, table=table)


def hm_wos(domain: StaircaseDomain, slits, z0, target: Target,
           params: WosParams = WosParams(), kernel: str | None = None) -> HMEstimate:
    """Monte Carlo harmonic measure of ``target`` at ``z0`` in ``domain`` minus ``slits``."""
    slits = tuple(slits)
    table = build_table(domain, slits)
    target.resolve(table.features, table.n_boundary)  # fail before sampling
    return exit_tally(domain, slits, z0, params, kernel=kernel, table=table).estimate(target)


def slit_measure(domain: StaircaseDomain, t: float, params: WosParams = WosParams(),
                 kernel: str | None = None) -> HMEstimate:
    """omega(0, [t, inf), domain minus [t, inf))."""
    return hm_wos(domain, [Segment.ray(t)], (0.0, 0.0), Target.slits(), params, kernel)
