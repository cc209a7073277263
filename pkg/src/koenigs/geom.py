"""Rectilinear (staircase) domains and the geometric queries used everywhere else.

A staircase domain is described by finitely many abscissae ``x_1 < ... < x_m``
and one vertical cross-section per piece.  Each cross-section is a finite
union of open intervals on the imaginary axis.  Domains convex in the positive
direction are exactly the ones whose sections grow (by inclusion) from left to
right.

Cross-section convention at a breakpoint ``x_i``: a point ``(x_i, y)`` is an
interior point iff ``y`` lies in both adjacent sections.  For monotone domains
this is the left section.
"""
from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

INF = math.inf


class DomainError(ValueError):
    """Raised for malformed or invalid domains and out-of-domain queries."""


class Point(NamedTuple):
    x: float
    y: float


# ---------------------------------------------------------------------------
# Interval sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of disjoint open intervals, sorted, with positive gaps.

    Touching intervals such as ``(0, 1)`` and ``(1, 2)`` are merged on
    construction, so sets are always stored in regularized form (the interior
    of their closure).
    """

    intervals: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        prev_hi = -INF
        for k, (lo, hi) in enumerate(self.intervals):
            if math.isnan(lo) or math.isnan(hi) or not lo < hi:
                raise DomainError(f"empty or invalid interval ({lo}, {hi})")
            if k and not lo > prev_hi:
                raise DomainError("intervals must be sorted with positive gaps")
            prev_hi = hi

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "IntervalSet":
        """Union of the given open intervals; empty pairs are dropped."""
        items = sorted((float(lo), float(hi)) for lo, hi in pairs if lo < hi)
        merged: list[list[float]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return cls(tuple((lo, hi) for lo, hi in merged))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def __contains__(self, y: float) -> bool:
        k = bisect.bisect_right(self.intervals, (y, INF)) - 1
        return k >= 0 and self.intervals[k][0] < y < self.intervals[k][1]

    def total_length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def reflect(self) -> "IntervalSet":
        return IntervalSet(tuple((-hi, -lo) for lo, hi in reversed(self.intervals)))

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_pairs(self.intervals + other.intervals)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet.from_pairs(out)

    def clip(self, lo: float, hi: float) -> "IntervalSet":
        return self.intersection(IntervalSet(((lo, hi),)))

    def issubset(self, other: "IntervalSet") -> bool:
        return all(
            any(olo <= lo and hi <= ohi for olo, ohi in other.intervals)
            for lo, hi in self.intervals
        )

    def interval_containing(self, y: float) -> tuple[float, float] | None:
        for lo, hi in self.intervals:
            if lo < y < hi:
                return (lo, hi)
        return None


# ---------------------------------------------------------------------------
# Segments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """Closed axis-parallel segment (possibly unbounded) from (x0, y0) to (x1, y1)."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if self.x0 != self.x1 and self.y0 != self.y1:
            raise DomainError("segments must be horizontal or vertical")
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise DomainError("segment endpoints must be ordered")
        if self.x0 == self.x1 and self.y0 == self.y1:
            raise DomainError("degenerate segment")

    @property
    def horizontal(self) -> bool:
        return self.y0 == self.y1

    @property
    def vertical(self) -> bool:
        return self.x0 == self.x1

    @property
    def length(self) -> float:
        return (self.x1 - self.x0) + (self.y1 - self.y0)

    def distance(self, px: float, py: float) -> float:
        dx = max(self.x0 - px, px - self.x1, 0.0)
        dy = max(self.y0 - py, py - self.y1, 0.0)
        return math.sqrt(dx * dx + dy * dy)

    def contains(self, px: float, py: float, tol: float = 1e-12) -> bool:
        return self.distance(px, py) <= tol

    @classmethod
    def ray(cls, t: float, y: float = 0.0) -> "Segment":
        """The horizontal half-line [t, +inf) at height y."""
        return cls(t, y, INF, y)


# ---------------------------------------------------------------------------
# Staircase domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StaircaseDomain:
    breakpoints: tuple[float, ...]
    sections: tuple[IntervalSet, ...]
    _segments: list = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        bps = tuple(float(x) for x in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        secs = tuple(s if isinstance(s, IntervalSet) else IntervalSet.from_pairs(s)
                     for s in self.sections)
        object.__setattr__(self, "sections", secs)
        if len(secs) != len(bps) + 1:
            raise DomainError("need exactly one more section than breakpoints")
        if any(not math.isfinite(x) for x in bps):
            raise DomainError("breakpoints must be finite")
        if any(b <= a for a, b in zip(bps, bps[1:])):
            raise DomainError("breakpoints must be strictly increasing")

    @classmethod
    def build(cls, breakpoints: Sequence[float], sections: Sequence) -> "StaircaseDomain":
        return cls(tuple(breakpoints), tuple(sections))

    @property
    def n_pieces(self) -> int:
        return len(self.sections)

    def piece_bounds(self, i: int) -> tuple[float, float]:
        lo = self.breakpoints[i - 1] if i > 0 else -INF
        hi = self.breakpoints[i] if i < len(self.breakpoints) else INF
        return lo, hi

    def piece_index(self, x: float) -> int:
        """Index of the piece whose open x-range contains x (right piece at a breakpoint)."""
        return bisect.bisect_right(self.breakpoints, x)

    def canonical(self) -> "StaircaseDomain":
        """Merge consecutive equal sections so structural equality is meaningful."""
        bps, secs = [], [self.sections[0]]
        for x, s in zip(self.breakpoints, self.sections[1:]):
            if s == secs[-1]:
                continue
            bps.append(x)
            secs.append(s)
        return StaircaseDomain(tuple(bps), tuple(secs))

    def is_symmetric(self) -> bool:
        return self.canonical() == reflect_domain(self).canonical()

    def boundary_segments(self) -> list[Segment]:
        if self._segments is None:
            object.__setattr__(self, "_segments", _boundary_segments(self))
        return list(self._segments)

    def to_json(self) -> dict:
        return domain_to_json(self)


def reflect_domain(domain: StaircaseDomain) -> StaircaseDomain:
    return StaircaseDomain(domain.breakpoints, tuple(s.reflect() for s in domain.sections))


@dataclass(frozen=True)
class ValidationReport:
    monotone: bool
    connected: bool
    contains_origin: bool
    offending_index: int | None = None
    n_components: int = 1

    @property
    def ok(self) -> bool:
        return self.monotone and self.connected and self.contains_origin


def _components(domain: StaircaseDomain, upto: int | None = None):
    """Union-find over (piece, interval) nodes; intervals in adjacent pieces
    are joined when their open intervals overlap."""
    last = domain.n_pieces if upto is None else upto
    nodes = [(i, j) for i in range(last) for j in range(len(domain.sections[i]))]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for i in range(last - 1):
        left, right = domain.sections[i].intervals, domain.sections[i + 1].intervals
        for a, (alo, ahi) in enumerate(left):
            for b, (blo, bhi) in enumerate(right):
                if max(alo, blo) < min(ahi, bhi):
                    ra, rb = find((i, a)), find((i + 1, b))
                    if ra != rb:
                        parent[ra] = rb
    return nodes, find


def validate(domain: StaircaseDomain) -> ValidationReport:
    """Report monotone inclusion, connectedness and whether 0 is interior."""
    offending = None
    monotone = True
    for i in range(domain.n_pieces - 1):
        if not domain.sections[i].issubset(domain.sections[i + 1]):
            monotone = False
            offending = i
            break
    if not domain.sections[-1]:
        monotone = False
        offending = domain.n_pieces - 1 if offending is None else offending

    nodes, find = _components(domain)
    roots = {find(n) for n in nodes}
    connected = len(roots) == 1
    if not connected and offending is None:
        offending = len(roots)
    return ValidationReport(
        monotone=monotone,
        connected=connected,
        contains_origin=contains(domain, Point(0.0, 0.0)),
        offending_index=offending,
        n_components=len(roots),
    )


def require_valid(domain: StaircaseDomain, need_origin: bool = True) -> None:
    rep = validate(domain)
    if not rep.monotone:
        raise DomainError(f"domain is not convex in the positive direction (piece {rep.offending_index})")
    if not rep.connected:
        raise DomainError(f"domain is not connected ({rep.n_components} components)")
    if need_origin and not rep.contains_origin:
        raise DomainError("domain does not contain the origin")


def cross_section(domain: StaircaseDomain, x: float) -> IntervalSet:
    i = bisect.bisect_left(domain.breakpoints, x)
    if i < len(domain.breakpoints) and domain.breakpoints[i] == x:
        return domain.sections[i].intersection(domain.sections[i + 1])
    return domain.sections[i]


def contains(domain: StaircaseDomain, p: Point | Sequence[float]) -> bool:
    x, y = p
    return y in cross_section(domain, x)


def _closed_minus_open(closed: list[list[float]], holes: IntervalSet) -> list[tuple[float, float]]:
    out = []
    for lo, hi in closed:
        pieces = [(lo, hi)]
        for a, b in holes.intervals:
            nxt = []
            for c, d in pieces:
                if b <= c or a >= d:
                    nxt.append((c, d))
                    continue
                if c < a:
                    nxt.append((c, a))
                if b < d:
                    nxt.append((b, d))
            pieces = nxt
        out.extend((c, d) for c, d in pieces if c < d)
    return out


def _boundary_segments(domain: StaircaseDomain) -> list[Segment]:
    # horizontal pieces keyed by height, then merged along x
    horiz: dict[float, list[tuple[float, float]]] = {}
    for i, sec in enumerate(domain.sections):
        xlo, xhi = domain.piece_bounds(i)
        ys = {e for iv in sec for e in iv if math.isfinite(e)}
        for y in ys:
            horiz.setdefault(y, []).append((xlo, xhi))
    segs = []
    for y in sorted(horiz):
        runs = []
        for xlo, xhi in sorted(horiz[y]):
            if runs and runs[-1][1] == xlo:
                runs[-1][1] = xhi
            else:
                runs.append([xlo, xhi])
        segs.extend(Segment(a, y, b, y) for a, b in runs)

    for i, x in enumerate(domain.breakpoints):
        left, right = domain.sections[i], domain.sections[i + 1]
        closed: list[list[float]] = []
        for lo, hi in sorted(left.intervals + right.intervals):
            if closed and lo <= closed[-1][1]:
                closed[-1][1] = max(closed[-1][1], hi)
            else:
                closed.append([lo, hi])
        for lo, hi in _closed_minus_open(closed, left.intersection(right)):
            segs.append(Segment(x, lo, x, hi))
    return segs


def boundary_segments(domain: StaircaseDomain) -> list[Segment]:
    """Maximal horizontal and vertical boundary segments; their union is the boundary."""
    return domain.boundary_segments()


def distance_to_boundary(domain: StaircaseDomain, p, extra_slits: Sequence[Segment] = ()):
    """Exact distance from an interior point to the boundary plus slits.

    Returns ``(distance, (kind, index))`` where kind is ``"boundary"`` or
    ``"slit"``; a slit wins ties.
    """
    px, py = p
    if not contains(domain, (px, py)):
        raise DomainError(f"point ({px}, {py}) is not interior to the domain")
    best, which = INF, None
    for k, seg in enumerate(domain.boundary_segments()):
        d = seg.distance(px, py)
        if d < best:
            best, which = d, ("boundary", k)
    for k, seg in enumerate(extra_slits):
        d = seg.distance(px, py)
        if d <= best:  # ties go to the slit
            best, which = d, ("slit", k)
    if best <= 0.0:
        raise DomainError("point lies on a slit")
    return best, which


def left_component(domain: StaircaseDomain, t: float) -> tuple[StaircaseDomain, list[Segment]]:
    """Component of the domain minus the line Re z = t containing 0, and its crosscut."""
    if not t > 0:
        raise DomainError("t must be positive")
    if not contains(domain, (0.0, 0.0)):
        raise DomainError("domain does not contain the origin")
    # pieces strictly left of t; the last one is truncated at t
    last = bisect.bisect_left(domain.breakpoints, t) + 1
    nodes, find = _components(domain, upto=last)
    i0 = domain.piece_index(0.0)
    j0 = next(j for j, (lo, hi) in enumerate(domain.sections[i0]) if lo < 0.0 < hi)
    root = find((i0, j0))
    keep = [[] for _ in range(last)]
    for i, j in nodes:
        if find((i, j)) == root:
            keep[i].append(domain.sections[i].intervals[j])
    bps = list(domain.breakpoints[: last - 1]) + [t]
    secs = [IntervalSet(tuple(k)) for k in keep] + [IntervalSet.empty()]
    comp = StaircaseDomain(tuple(bps), tuple(secs)).canonical()
    crosscut = [Segment(t, lo, t, hi) for lo, hi in keep[-1]]
    return comp, crosscut


# ---------------------------------------------------------------------------
# JSON format
# ---------------------------------------------------------------------------


def _enc(v: float):
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return float(v)


def _dec(v) -> float:
    if isinstance(v, str):
        if v in ("inf", "+inf"):
            return INF
        if v == "-inf":
            return -INF
        raise DomainError(f"bad endpoint sentinel {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DomainError(f"bad endpoint {v!r}")
    return float(v)


def domain_to_json(domain: StaircaseDomain) -> dict:
    return {
        "breakpoints": [float(x) for x in domain.breakpoints],
        "sections": [[[_enc(lo), _enc(hi)] for lo, hi in s] for s in domain.sections],
    }


def domain_from_json(data: dict, check: bool = True) -> StaircaseDomain:
    try:
        bps = [_dec(x) for x in data["breakpoints"]]
        secs = [IntervalSet(tuple((_dec(lo), _dec(hi)) for lo, hi in s)) for s in data["sections"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed domain JSON: {exc}") from exc
    dom = StaircaseDomain(tuple(bps), tuple(secs))
    if check:
        require_valid(dom, need_origin=False)
    return dom


def dumps_domain(domain: StaircaseDomain) -> str:
    return json.dumps(domain_to_json(domain))


def loads_domain(text: str, check: bool = True) -> StaircaseDomain:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed domain JSON: {exc}") from exc
    return domain_from_json(data, check=check)
