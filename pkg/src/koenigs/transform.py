"""Steiner symmetrization and polarization of staircase domains.

Both transforms act section by section, so on staircase domains they are exact
interval algebra.  Outputs are canonicalized (equal neighbouring sections
merged) so that structural equality can be asserted in tests.
"""
from __future__ import annotations

from .geom import (
    INF,
    IntervalSet,
    Segment,
    StaircaseDomain,
    cross_section,
    reflect_domain,
    require_valid,
)


def symmetrize_section(s: IntervalSet) -> IntervalSet:
    if not s:
        return IntervalSet.empty()
    half = s.total_length() / 2.0
    return IntervalSet(((-half, half),))


def polarize_section(s: IntervalSet) -> IntervalSet:
    """(s u s*) on the closed upper half-line joined with (s n s*) on the lower one.

    Working with regularized open sets, the two halves glue along y = 0
    exactly when 0 is in s.
    """
    r = s.reflect()
    upper = s.union(r).clip(0.0, INF)
    lower = s.intersection(r).clip(-INF, 0.0)
    return lower.union(upper)


def steiner(domain: StaircaseDomain, check: bool = True) -> StaircaseDomain:
    if check:
        require_valid(domain, need_origin=False)
    out = StaircaseDomain(domain.breakpoints, tuple(symmetrize_section(s) for s in domain.sections))
    return out.canonical()


def reflect(domain: StaircaseDomain) -> StaircaseDomain:
    return reflect_domain(domain)


def polarize(domain: StaircaseDomain, check: bool = True) -> StaircaseDomain:
    if check:
        require_valid(domain, need_origin=False)
    out = StaircaseDomain(domain.breakpoints, tuple(polarize_section(s) for s in domain.sections))
    return out.canonical()


def steiner_crosscut(crosscut: list[Segment]) -> list[Segment]:
    """Closed-set symmetrization of a vertical crosscut: one centred closed segment."""
    if not crosscut:
        return []
    xs = {seg.x0 for seg in crosscut}
    if len(xs) != 1 or not all(seg.vertical for seg in crosscut):
        raise ValueError("crosscut must consist of vertical segments on one line")
    half = sum(seg.length for seg in crosscut) / 2.0
    x = xs.pop()
    return [Segment(x, -half, x, half)]


def union_domain(a: StaircaseDomain, b: StaircaseDomain) -> StaircaseDomain:
    return _combine(a, b, IntervalSet.union)


def intersect_domain(a: StaircaseDomain, b: StaircaseDomain) -> StaircaseDomain:
    return _combine(a, b, IntervalSet.intersection)


def _combine(a: StaircaseDomain, b: StaircaseDomain, op) -> StaircaseDomain:
    bps = sorted(set(a.breakpoints) | set(b.breakpoints))
    edges = [-INF] + bps + [INF]
    secs = []
    for lo, hi in zip(edges, edges[1:]):
        if lo == -INF:
            x = hi - 1.0 if hi != INF else 0.0
        elif hi == INF:
            x = lo + 1.0
        else:
            x = 0.5 * (lo + hi)
        secs.append(op(cross_section(a, x), cross_section(b, x)))
    return StaircaseDomain(tuple(bps), tuple(secs)).canonical()


def domain_issubset(a: StaircaseDomain, b: StaircaseDomain) -> bool:
    """Piecewise inclusion of sections (open-set inclusion up to measure zero)."""
    return intersect_domain(a, b) == a.canonical()
