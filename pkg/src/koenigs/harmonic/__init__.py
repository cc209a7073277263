"""Harmonic measure: walk-on-spheres, grid Laplace oracle and disk closed forms."""
from .closed_form import (
    arc_measure,
    crosscut_geodesic,
    diam_bound,
    inverse_slit_disk,
    slit_disk,
    slit_disk_derivative,
)
from .grid import hm_grid
from .wos import HMEstimate, Target, WosParams, exit_tally, hm_wos, slit_measure
