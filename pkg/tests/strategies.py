"""Hypothesis strategies for interval sets and staircase domains."""
from hypothesis import strategies as st

from koenigs.fixtures import random_staircase
from koenigs.geom import INF, IntervalSet

EIGHTHS = st.integers(-24, 24).map(lambda k: k / 8)


@st.composite
def interval_sets(draw, max_intervals=4, allow_inf=True):
    pts = sorted(set(draw(st.lists(EIGHTHS, min_size=0, max_size=2 * max_intervals))))
    if len(pts) % 2:
        pts = pts[:-1]
    pairs = [(pts[i], pts[i + 1]) for i in range(0, len(pts), 2)]
    if allow_inf and pairs and draw(st.booleans()):
        pairs[0] = (-INF, pairs[0][1])
    if allow_inf and pairs and draw(st.booleans()):
        pairs[-1] = (pairs[-1][0], INF)
    return IntervalSet.from_pairs(pairs)


def staircases():
    """Valid domains containing 0, from the package's seeded generator."""
    return st.integers(0, 2**32 - 1).map(random_staircase)
