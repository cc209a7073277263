"""Pure-Python (numpy) walk-on-spheres kernel.

Vectorized over a batch of walkers that all take their j-th step together.
Mirrors ``_wos_kernel.pyx`` step for step, including the scan order of the
nearest-feature search, so exit classifications coincide up to the last-ulp
behaviour of the trigonometric functions.
"""
from __future__ import annotations

import numpy as np

from .rng import mix64, uniform_np, walk_keys_np

BATCH = 1 << 16


def _pad(table):
    ncell = table.n_cells
    counts = np.diff(table.cell_ptr)
    width = max(int(counts.max()) if ncell else 0, 1)
    shape = (ncell, width)
    E = {k: np.full(shape, np.nan) for k in ("x0", "y0", "x1", "y1")}
    F = np.full(shape, -1, dtype=np.int64)
    for j in range(ncell):
        a, b = table.cell_ptr[j], table.cell_ptr[j + 1]
        m = b - a
        E["x0"][j, :m] = table.ex0[a:b]
        E["y0"][j, :m] = table.ey0[a:b]
        E["x1"][j, :m] = table.ex1[a:b]
        E["y1"][j, :m] = table.ey1[a:b]
        F[j, :m] = table.efeat[a:b]
    return E, F


def _scan(E, F, cells, px, py):
    pxc, pyc = px[:, None], py[:, None]
    dx = np.maximum(np.maximum(E["x0"][cells] - pxc, pxc - E["x1"][cells]), 0.0)
    dy = np.maximum(np.maximum(E["y0"][cells] - pyc, pyc - E["y1"][cells]), 0.0)
    d2 = dx * dx + dy * dy
    d2[np.isnan(d2)] = np.inf
    k = np.argmin(d2, axis=1)
    rows = np.arange(len(cells))
    return d2[rows, k], F[cells, k]


def nearest_batch(table, padded, px, py):
    E, F = padded
    edges = table.edges
    ncell = table.n_cells
    c = np.searchsorted(edges[1:ncell], px, side="right")
    best2, feat = _scan(E, F, c, px, py)
    left_ok = c > 0
    right_ok = c < ncell - 1
    k = 1
    while left_ok.any() or right_ok.any():
        for side in (-1, 1):
            ok = left_ok if side < 0 else right_ok
            idx = np.nonzero(ok)[0]
            if idx.size == 0:
                continue
            j = c[idx] + side * k
            inside = (j >= 0) & (j < ncell)
            ok[idx[~inside]] = False
            idx, j = idx[inside], j[inside]
            if idx.size == 0:
                continue
            gap = px[idx] - edges[j + 1] if side < 0 else edges[j] - px[idx]
            hit = gap * gap < best2[idx]
            ok[idx[~hit]] = False
            idx, j = idx[hit], j[hit]
            if idx.size == 0:
                continue
            d2, f = _scan(E, F, j, px[idx], py[idx])
            better = d2 < best2[idx]
            best2[idx[better]] = d2[better]
            feat[idx[better]] = f[better]
        k += 1
    return best2, feat


def run_walks(x0, y0, table, seed, start, n, eps, max_steps, right_cap, nthreads=1):
    if n <= 0:
        return np.empty(0, dtype=np.int64)
    if len(table.ex0) == 0:
        raise ValueError("domain has no boundary features")
    padded = _pad(table)
    out = np.full(n, -1, dtype=np.int64)
    eps2 = eps * eps
    seed = int(seed) & ((1 << 64) - 1)
    mix64(seed)  # validates range
    for b0 in range(0, n, BATCH):
        m = min(BATCH, n - b0)
        ids = np.arange(start + b0, start + b0 + m, dtype=np.uint64)
        keys = walk_keys_np(seed, ids)
        x = np.full(m, float(x0))
        y = np.full(m, float(y0))
        alive = np.arange(m)
        for step in range(max_steps):
            if alive.size == 0:
                break
            d2, f = nearest_batch(table, padded, x[alive], y[alive])
            absorbed = d2 < eps2
            out[b0 + alive[absorbed]] = f[absorbed]
            keep = ~absorbed & ~(x[alive] > right_cap)
            alive, d2 = alive[keep], d2[keep]
            if alive.size == 0:
                break
            d = np.sqrt(d2)
            ang = 2.0 * np.pi * uniform_np(keys[alive], step)
            x[alive] = x[alive] + d * np.cos(ang)
            y[alive] = y[alive] + d * np.sin(ang)
    return out
