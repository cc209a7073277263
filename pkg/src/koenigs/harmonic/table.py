"""Flattened boundary representation consumed by the walk kernels.

Every boundary feature (maximal boundary segment or slit) is cut along the
domain's breakpoints into elements, and elements are bucketed by the vertical
strip ("cell") they live in.  A nearest-feature query scans the walker's cell
and then neighbouring cells outward, stopping on each side once the
horizontal gap to the next cell exceeds the best distance found so far.
Verticals lying on a breakpoint are stored in both adjacent cells.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from ..geom import INF, StaircaseDomain


@dataclass(frozen=True)
class WalkTable:
    edges: np.ndarray
    cell_ptr: np.ndarray
    ex0: np.ndarray
    ey0: np.ndarray
    ex1: np.ndarray
    ey1: np.ndarray
    efeat: np.ndarray
    features: tuple
    n_boundary: int

    @property
    def n_cells(self) -> int:
        return len(self.edges) - 1

    @property
    def n_features(self) -> int:
        return len(self.features)


def build_table(domain: StaircaseDomain, slits=()) -> WalkTable:
    features = tuple(domain.boundary_segments()) + tuple(slits)
    edges = [-INF, *domain.breakpoints, INF]
    ncell = len(edges) - 1
    buckets: list[list[tuple]] = [[] for _ in range(ncell)]
    for fid, seg in enumerate(features):
        if seg.horizontal:
            first = max(bisect.bisect_right(edges, seg.x0) - 1, 0)
            for j in range(first, ncell):
                lo, hi = edges[j], edges[j + 1]
                if lo >= seg.x1:
                    break
                a, b = max(seg.x0, lo), min(seg.x1, hi)
                if a < b:
                    buckets[j].append((a, seg.y0, b, seg.y1, fid))
        else:
            c = seg.x0
            j = bisect.bisect_right(edges, c) - 1
            buckets[j].append((seg.x0, seg.y0, seg.x1, seg.y1, fid))
            if edges[j] == c and j > 0:
                buckets[j - 1].append((seg.x0, seg.y0, seg.x1, seg.y1, fid))
    ptr = np.zeros(ncell + 1, dtype=np.int64)
    flat = []
    for j, b in enumerate(buckets):
        flat.extend(b)
        ptr[j + 1] = len(flat)
    arr = np.array([e[:4] for e in flat], dtype=np.float64).reshape(-1, 4)
    return WalkTable(
        edges=np.array(edges, dtype=np.float64),
        cell_ptr=ptr,
        ex0=np.ascontiguousarray(arr[:, 0]),
        ey0=np.ascontiguousarray(arr[:, 1]),
        ex1=np.ascontiguousarray(arr[:, 2]),
        ey1=np.ascontiguousarray(arr[:, 3]),
        efeat=np.array([e[4] for e in flat], dtype=np.int64),
        features=features,
        n_boundary=len(features) - len(slits),
    )


def nearest_feature(table: WalkTable, px: float, py: float) -> tuple[float, int]:
    """Scalar reference for the kernels' nearest-feature search (squared distance)."""
    edges = table.edges
    ncell = table.n_cells
    c = bisect.bisect_right(edges, px, 1, ncell) - 1
    best2, feat = INF, -1

    def scan(j):
        nonlocal best2, feat
        for e in range(table.cell_ptr[j], table.cell_ptr[j + 1]):
            dx = max(table.ex0[e] - px, px - table.ex1[e], 0.0)
            dy = max(table.ey0[e] - py, py - table.ey1[e], 0.0)
            d2 = dx * dx + dy * dy
            if d2 < best2:
                best2, feat = d2, int(table.efeat[e])

    scan(c)
    left_ok, right_ok = c > 0, c < ncell - 1
    k = 1
    while left_ok or right_ok:
        if left_ok:
            j = c - k
            if j < 0:
                left_ok = False
            else:
                gap = px - edges[j + 1]
                if gap * gap < best2:
                    scan(j)
                else:
                    left_ok = False
        if right_ok:
            j = c + k
            if j >= ncell:
                right_ok = False
            else:
                gap = edges[j] - px
                if gap * gap < best2:
                    scan(j)
                else:
                    right_ok = False
        k += 1
    return best2, feat

