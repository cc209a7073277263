"""Reference domains and a seeded random staircase generator."""
from __future__ import annotations

import numpy as np

from .geom import INF, IntervalSet, StaircaseDomain, require_valid

STEP = 0.125


def fig1() -> StaircaseDomain:
    """Three-step staircase with a two-interval middle section.

    Shifted so that the origin sits inside the first nonempty piece.
    """
    return StaircaseDomain(
        (-0.25, 0.25, 1.75),
        (
            IntervalSet(),
            IntervalSet(((-1.0, 0.5),)),
            IntervalSet(((-1.0, 0.5), (1.0, 1.5))),
            IntervalSet(((-1.0, 1.5),)),
        ),
    )


def fig1_steiner() -> StaircaseDomain:
    return StaircaseDomain(
        (-0.25, 0.25, 1.75),
        (
            IntervalSet(),
            IntervalSet(((-0.75, 0.75),)),
            IntervalSet(((-1.0, 1.0),)),
            IntervalSet(((-1.25, 1.25),)),
        ),
    )


def fig2_polarized() -> StaircaseDomain:
    """Polarization of ``fig1``."""
    return StaircaseDomain(
        (-0.25, 0.25, 1.75),
        (
            IntervalSet(),
            IntervalSet(((-0.5, 1.0),)),
            IntervalSet(((-0.5, 1.5),)),
            IntervalSet(((-1.0, 1.5),)),
        ),
    )


NAMED = {"fig1": fig1, "fig1_steiner": fig1_steiner, "fig2_polarized": fig2_polarized}


def _grid(rng, lo, hi):
    """Uniform multiple of STEP in [lo, hi]."""
    a, b = int(np.ceil(lo / STEP)), int(np.floor(hi / STEP))
    return STEP * int(rng.integers(a, b + 1))


def _shrink(rng, iv, keep_origin):
    """A sub-collection of (at most two) open intervals inside ``iv``."""
    lo, hi = iv
    flo = lo if np.isfinite(lo) else min(hi, 0.0) - 3.0
    fhi = hi if np.isfinite(hi) else max(lo, 0.0) + 3.0
    if keep_origin:
        new_lo = lo if (rng.random() < 0.4 or fhi - flo < 4 * STEP) else _grid(rng, flo, -STEP)
        new_hi = hi if rng.random() < 0.4 else _grid(rng, STEP, fhi)
        new_lo = max(new_lo, lo)
        new_hi = min(new_hi, hi)
    else:
        if rng.random() < 0.25:
            return []
        if fhi - flo < 3 * STEP:
            return [iv]
        new_lo = lo if rng.random() < 0.4 else _grid(rng, flo, fhi - 2 * STEP)
        start = new_lo if np.isfinite(new_lo) else flo
        new_hi = hi if rng.random() < 0.4 else _grid(rng, start + STEP, fhi)
    if not new_lo < new_hi:
        return []
    # optionally punch a gap, away from the origin when it must stay inside
    if rng.random() < 0.3 and np.isfinite(new_lo) and np.isfinite(new_hi) and new_hi - new_lo >= 4 * STEP:
        c = _grid(rng, new_lo + STEP, new_hi - 3 * STEP)
        g = STEP * int(rng.integers(1, 3))
        if c + g < new_hi and not (keep_origin and c - STEP <= 0.0 <= c + g + STEP):
            return [(new_lo, c), (c + g, new_hi)]
    return [(new_lo, new_hi)]


def random_staircase(seed: int, max_breakpoints: int = 4) -> StaircaseDomain:
    """Seeded random valid staircase domain containing the origin.

    Finite coordinates are multiples of 1/8, 0 is never a breakpoint, and the
    last section is a single interval (which makes the domain connected).
    """
    rng = np.random.default_rng(seed)
    while True:
        m = int(rng.integers(1, max_breakpoints + 1))
        cand = [k * STEP for k in range(-16, 25) if k != 0]
        bps = sorted(rng.choice(cand, size=m, replace=False).tolist())
        p0 = int(np.searchsorted(bps, 0.0, side="right"))
        lo = -INF if rng.random() < 0.15 else _grid(rng, -2.0, -STEP)
        hi = INF if rng.random() < 0.15 else _grid(rng, STEP, 2.0)
        secs = [[(lo, hi)]]
        for i in range(m - 1, -1, -1):
            nxt = []
            for iv in secs[0]:
                keep = i >= p0 and iv[0] < 0.0 < iv[1]
                nxt.extend(_shrink(rng, iv, keep))
            if i == 0 and p0 > 0 and rng.random() < 0.4:
                nxt = []
            secs.insert(0, nxt)
        dom = StaircaseDomain(tuple(bps), tuple(IntervalSet.from_pairs(s) for s in secs))
        try:
            require_valid(dom)
        except ValueError:
            continue
        return dom


def random_suite(seed: int, count: int) -> list[StaircaseDomain]:
    """``count`` domains from a single seed (each drawn with its own sub-seed)."""
    ss = np.random.SeedSequence(seed)
    return [random_staircase(int(c.generate_state(1)[0])) for c in ss.spawn(count)]
