"""Throughput of the compiled and numpy walk-on-spheres kernels.

    python benchmarks/bench_wos.py --samples 200000

Prints one row per (fixture, kernel) with walks per second, the speedup of
the compiled kernel, and whether both kernels classified every walk alike.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from koenigs.fixtures import fig1, random_staircase
from koenigs.geom import IntervalSet, Segment, StaircaseDomain
from koenigs.harmonic import backend
from koenigs.harmonic.table import build_table
from koenigs.harmonic.wos import default_eps

FIXTURES = {
    "strip_slit": (StaircaseDomain((), (IntervalSet(((-1.0, 1.0),)),)), [Segment.ray(1.0)]),
    "half_plane_slit": (StaircaseDomain((-1.0,), (IntervalSet(), IntervalSet(((-np.inf, np.inf),)))),
                        [Segment.ray(1.0)]),
    "fig1_slit": (fig1(), [Segment.ray(1.0)]),
    "random_slit": (random_staircase(7), [Segment.ray(1.0)]),
}


def run(kernel, dom, slits, n, seed, threads):
    table = build_table(dom, slits)
    run_walks = backend.get_kernel(kernel).run_walks
    t0 = time.perf_counter()
    out = run_walks(0.0, 0.0, table, seed, 0, n, default_eps(dom), 100_000, np.inf, threads)
    return time.perf_counter() - t0, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=backend.thread_count())
    args = ap.parse_args(argv)

    kernels = sorted(backend.KERNELS)
    print(f"kernels available: {', '.join(kernels)}; threads={args.threads}")
    print(f"{'fixture':<16} {'kernel':<9} {'seconds':>8} {'walks/s':>12} {'speedup':>8} agree")
    for name, (dom, slits) in FIXTURES.items():
        res = {k: run(k, dom, slits, args.samples, args.seed, args.threads) for k in kernels}
        base = res["python"][0]
        agree = len({r[1].tobytes() for r in res.values()}) == 1
        for k in kernels:
            sec, _ = res[k]
            print(f"{name:<16} {k:<9} {sec:8.3f} {args.samples / sec:12.0f} {base / sec:8.1f} {agree}")


if __name__ == "__main__":
    main()
