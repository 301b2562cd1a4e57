"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--quick]

Each workload runs ``--repeat`` times per backend; the median wall time
is reported together with the speed-up of the compiled kernels.
"""
from __future__ import annotations

import argparse
import statistics
import time
from pathlib import Path

import numpy as np

from ts3c import hier_clustering
from ts3c._backend import available_backends
from ts3c.baseline_distances import dtw_matrix
from ts3c.dataset_io import load_ucr
from ts3c.pipeline import run
from ts3c.segmentation import segment_bounds

COFFEE = Path(__file__).resolve().parents[1] / "tests" / "data" / "ucr" / "Coffee"


def _median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def workloads(quick: bool):
    rng = np.random.default_rng(0)
    scale = 4 if quick else 1
    walks = [np.cumsum(rng.normal(size=1000)) for _ in range(200 // scale)]
    walks = [(w - w.mean()) / w.std() for w in walks]
    points = rng.normal(size=(800 // scale, 18))
    series = [rng.normal(size=286) for _ in range(60 // scale)]
    coffee = load_ucr(COFFEE / "Coffee_TRAIN", COFFEE / "Coffee_TEST")

    def seg(backend):
        for w in walks:
            for g in (10.0, 50.0, 100.0):
                segment_bounds(w, g, backend=backend)

    def ward(backend):
        hier_clustering.linkage(points, backend=backend)

    def dtw(backend):
        dtw_matrix(series, backend=backend)

    def pipeline(backend):
        run(coffee, "ch", backend=backend)

    return {
        f"segmentation ({len(walks)} x 1000 pts, 3 thresholds)": seg,
        f"Ward linkage ({points.shape[0]} x 18)": ward,
        f"DTW matrix ({len(series)} x 286)": dtw,
        "Coffee end to end (CH, 10 thresholds)": pipeline,
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    args = parser.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the fallback only")
    print(f"{'workload':<48}" + "".join(f"{b:>12}" for b in backends) + ("  speed-up" if len(backends) > 1 else ""))
    for name, fn in workloads(args.quick).items():
        secs = {b: _median_time(lambda: fn(b), args.repeat) for b in backends}
        row = f"{name:<48}" + "".join(f"{secs[b]:>11.4f}s" for b in backends)
        if len(backends) > 1:
            row += f"  {secs['python'] / secs['cython']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
