# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled walk-on-spheres kernel.

Same algorithm and random stream as ``_wos_py``; see ``table`` for the
nearest-feature search.
"""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sqrt, cos, sin, INFINITY
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double TO_UNIT = 1.0 / 9007199254740992.0
cdef double TWO_PI = 6.283185307179586


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double dmax3(double a, double b) noexcept nogil:
    cdef double m = a if a > b else b
    return m if m > 0.0 else 0.0


cdef inline double nearest(double px, double py,
                           const double* edges, Py_ssize_t ncell,
                           const int64_t* ptr,
                           const double* ex0, const double* ey0,
                           const double* ex1, const double* ey1,
                           const int64_t* efeat, int64_t* feat) noexcept nogil:
    cdef Py_ssize_t lo = 1, hi = ncell, mid, c, j, e, k
    cdef double best2 = INFINITY, dx, dy, d2, gap
    cdef int64_t f = -1
    cdef bint left_ok, right_ok
    # c = bisect_right(edges, px, 1, ncell) - 1
    while lo < hi:
        mid = (lo + hi) >> 1
        if px < edges[mid]:
            hi = mid
        else:
            lo = mid + 1
    c = lo - 1
    for e in range(ptr[c], ptr[c + 1]):
        dx = dmax3(ex0[e] - px, px - ex1[e])
        dy = dmax3(ey0[e] - py, py - ey1[e])
        d2 = dx * dx + dy * dy
        if d2 < best2:
            best2 = d2
            f = efeat[e]
    left_ok = c > 0
    right_ok = c < ncell - 1
    k = 1
    while left_ok or right_ok:
        if left_ok:
            j = c - k
            if j < 0:
                left_ok = False
            else:
                gap = px - edges[j + 1]
                if gap * gap < best2:
                    for e in range(ptr[j], ptr[j + 1]):
                        dx = dmax3(ex0[e] - px, px - ex1[e])
                        dy = dmax3(ey0[e] - py, py - ey1[e])
                        d2 = dx * dx + dy * dy
                        if d2 < best2:
                            best2 = d2
                            f = efeat[e]
                else:
                    left_ok = False
        if right_ok:
            j = c + k
            if j >= ncell:
                right_ok = False
            else:
                gap = edges[j] - px
                if gap * gap < best2:
                    for e in range(ptr[j], ptr[j + 1]):
                        dx = dmax3(ex0[e] - px, px - ex1[e])
                        dy = dmax3(ey0[e] - py, py - ey1[e])
                        d2 = dx * dx + dy * dy
                        if d2 < best2:
                            best2 = d2
                            f = efeat[e]
                else:
                    right_ok = False
        k += 1
    feat[0] = f
    return best2


def nearest_feature(double px, double py, table):
    cdef const double[::1] edges = table.edges
    cdef const int64_t[::1] ptr = table.cell_ptr
    cdef const double[::1] ex0 = table.ex0, ey0 = table.ey0, ex1 = table.ex1, ey1 = table.ey1
    cdef const int64_t[::1] efeat = table.efeat
    cdef int64_t f = -1
    cdef double d2 = nearest(px, py, &edges[0], edges.shape[0] - 1, &ptr[0],
                             &ex0[0], &ey0[0], &ex1[0], &ey1[0], &efeat[0], &f)
    return d2, f


def run_walks(double x0, double y0, table, uint64_t seed, int64_t start, int64_t n,
              double eps, int64_t max_steps, double right_cap, int nthreads=1):
    """Run walks ``start .. start+n-1``; return exit feature per walk (-1 = censored)."""
    cdef const double[::1] edges = table.edges
    cdef const int64_t[::1] ptr = table.cell_ptr
    cdef const double[::1] ex0 = table.ex0, ey0 = table.ey0, ex1 = table.ex1, ey1 = table.ey1
    cdef const int64_t[::1] efeat = table.efeat
    cdef Py_ssize_t ncell = edges.shape[0] - 1
    out_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef uint64_t base = mix64(seed)
    cdef double eps2 = eps * eps
    cdef Py_ssize_t i
    cdef int64_t step, f, result
    cdef uint64_t key
    cdef double x, y, d2, d, ang
    if n <= 0:
        return out_arr
    if ex0.shape[0] == 0:
        raise ValueError("domain has no boundary features")
    for i in prange(n, nogil=True, num_threads=nthreads, schedule="static"):
        key = mix64(base ^ (<uint64_t>(start + i) * GOLDEN))
        x = x0
        y = y0
        result = -1
        f = -1
        for step in range(max_steps):
            d2 = nearest(x, y, &edges[0], ncell, &ptr[0],
                         &ex0[0], &ey0[0], &ex1[0], &ey1[0], &efeat[0], &f)
            if d2 < eps2:
                result = f
                break
            if x > right_cap:
                break
            d = sqrt(d2)
            ang = TWO_PI * (<double>(mix64(key + <uint64_t>(step + 1) * GOLDEN) >> 11) * TO_UNIT)
            x = x + d * cos(ang)
            y = y + d * sin(ang)
        out[i] = result
    return out_arr
