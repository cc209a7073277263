"""Finite-difference Laplace oracle for harmonic measure on staircase domains.

The mesh is a tensor product of two 1-D axes.  Every breakpoint, finite
section endpoint, slit endpoint and the evaluation point is a mesh line, so
the rectilinear boundary is represented exactly.  Spacing is ``h`` inside a
core window around those features and grows linearly with the distance from
the core out to the truncation window, where the boundary value is 0.  The
5-point stencil on the nonuniform mesh is solved with a sparse direct solver.

Truncation: ``far`` defaults to 40 times the largest finite section length
for domains with bounded sections (exponentially small error in strip-like
far fields) and to 1e4 when some section is unbounded (half-plane-like far
fields, where the error decays only like 1/far).
"""
from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from ..geom import DomainError, StaircaseDomain, cross_section
from .wos import Target

TOL = 1e-12


def _axis_map(c0, c1, h, g):
    def F(x):
        if x < c0:
            return -math.log((h + g * (c0 - x)) / h) / g
        if x > c1:
            return (c1 - c0) / h + math.log((h + g * (x - c1)) / h) / g
        return (x - c0) / h

    def Finv(u):
        if u < 0:
            return c0 - h * (math.exp(-u * g) - 1.0) / g
        top = (c1 - c0) / h
        if u > top:
            return c1 + h * (math.exp((u - top) * g) - 1.0) / g
        return c0 + u * h

    return F, Finv


def build_axis(keys, lo, hi, h, core, growth=0.1) -> np.ndarray:
    """Mesh lines on [lo, hi] through every key: spacing h on ``core``, growing outside."""
    ks = sorted({k for k in keys if lo <= k <= hi} | {lo, hi})
    F, Finv = _axis_map(core[0], core[1], h, growth)
    nodes = [ks[0]]
    for a, b in zip(ks, ks[1:]):
        fa, fb = F(a), F(b)
        n = max(1, math.ceil(fb - fa - 1e-9))
        for u in np.linspace(fa, fb, n + 1)[1:-1]:
            nodes.append(Finv(u))
        nodes.append(b)
    return np.array(nodes)


def _window(domain: StaircaseDomain, slits, z0, far, right_cap):
    secs = [s for s in domain.sections if s]
    ends = [e for s in secs for iv in s for e in iv]
    bounded_y = all(math.isfinite(e) for e in ends)
    finite_len = [hi - lo for s in secs for lo, hi in s if math.isfinite(hi - lo)]
    Lmax = max(finite_len) if finite_len else 1.0
    if far is None:
        far = 40.0 * Lmax if bounded_y else 1e4

    xkeys = list(domain.breakpoints) + [z0[0]]
    ykeys = [e for e in ends if math.isfinite(e)] + [z0[1]]
    for s in slits:
        xkeys += [v for v in (s.x0, s.x1) if math.isfinite(v)]
        ykeys += [v for v in (s.y0, s.y1) if math.isfinite(v)]

    left = domain.breakpoints[0] if not domain.sections[0] else min(xkeys) - far
    if right_cap is not None:
        right = right_cap
    elif not domain.sections[-1]:
        right = domain.breakpoints[-1]
    else:
        right = max(xkeys) + far
    if bounded_y:
        bottom, top = min(ends), max(ends)
    else:
        span = max(abs(v) for v in ykeys)
        bottom, top = -(span + far), span + far
    return (left, right, bottom, top), xkeys, ykeys, Lmax


def _on_segment_mask(X, Y, seg):
    if seg.horizontal:
        row = np.abs(Y - seg.y0) <= TOL
        col = (X >= seg.x0 - TOL) & (X <= seg.x1 + TOL)
    else:
        col = np.abs(X - seg.x0) <= TOL
        row = (Y >= seg.y0 - TOL) & (Y <= seg.y1 + TOL)
    return col[:, None] & row[None, :]


def hm_grid(domain: StaircaseDomain, slits, z0, target: Target, h: float = 1.0 / 64,
            right_cap: float | None = None, far: float | None = None,
            growth: float = 0.1, margin: float | None = None) -> float:
    """Finite-difference value of omega(z0, target, domain minus slits)."""
    slits = tuple(slits)
    features = tuple(domain.boundary_segments()) + slits
    tids = target.resolve(features, len(features) - len(slits))
    (left, right, bottom, top), xkeys, ykeys, Lmax = _window(domain, slits, z0, far, right_cap)
    if not (left < z0[0] < right and bottom < z0[1] < top):
        raise DomainError("evaluation point outside the truncation window")
    margin = 2.0 * min(Lmax, 4.0) if margin is None else margin
    fx = [k for k in xkeys if left <= k <= right]
    fy = [k for k in ykeys if bottom <= k <= top]
    core_x = (max(left, min(fx) - margin), min(right, max(fx) + margin))
    core_y = (max(bottom, min(fy) - margin), min(top, max(fy) + margin))
    X = build_axis(xkeys, left, right, h, core_x, growth)
    Y = build_axis(ykeys, bottom, top, h, core_y, growth)
    nx, ny = len(X), len(Y)

    inside = np.zeros((nx, ny), dtype=bool)
    for i in range(1, nx - 1):
        sec = cross_section(domain, X[i])
        for lo, hi in sec:
            a = np.searchsorted(Y, lo, side="right")
            b = np.searchsorted(Y, hi, side="left")
            inside[i, a:b] = True
            if b > a and (b - a + 1) < 4 and math.isfinite(lo) and math.isfinite(hi) \
                    and bottom <= lo and hi <= top:
                raise DomainError(f"mesh too coarse: {b - a + 1} cells across ({lo}, {hi})")
    inside[:, 0] = inside[:, -1] = False
    for s in slits:
        inside &= ~_on_segment_mask(X, Y, s)
    hot = np.zeros((nx, ny), dtype=bool)
    for k in tids:
        hot |= _on_segment_mask(X, Y, features[k])

    idx = -np.ones((nx, ny), dtype=np.int64)
    ii, jj = np.nonzero(inside)
    idx[ii, jj] = np.arange(len(ii))
    n = len(ii)
    dxm = X[ii] - X[ii - 1]
    dxp = X[ii + 1] - X[ii]
    dym = Y[jj] - Y[jj - 1]
    dyp = Y[jj + 1] - Y[jj]
    coef = {
        (-1, 0): 2.0 / (dxm * (dxm + dxp)),
        (1, 0): 2.0 / (dxp * (dxm + dxp)),
        (0, -1): 2.0 / (dym * (dym + dyp)),
        (0, 1): 2.0 / (dyp * (dym + dyp)),
    }
    rows, cols, vals = [np.arange(n)], [np.arange(n)], [-sum(coef.values())]
    rhs = np.zeros(n)
    for (di, dj), c in coef.items():
        ni, nj = ii + di, jj + dj
        nb = idx[ni, nj]
        interior = nb >= 0
        rows.append(np.nonzero(interior)[0])
        cols.append(nb[interior])
        vals.append(c[interior])
        rhs[~interior] -= c[~interior] * hot[ni[~interior], nj[~interior]]
    A = sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                      shape=(n, n))
    u = spsolve(A.tocsc(), rhs)
    i0 = int(np.argmin(np.abs(X - z0[0])))
    j0 = int(np.argmin(np.abs(Y - z0[1])))
    k0 = idx[i0, j0]
    if k0 < 0:
        raise DomainError("evaluation point is not an interior mesh node")
    return float(u[k0])
