"""Labeled synthetic datasets of piecewise-linear shape families."""
from __future__ import annotations

import numpy as np

from .dataset_io import Dataset, TimeSeries

# knot positions (fractions of the length) and knot values per family
FAMILIES = {
    "ramp_plateau": ([0.0, 0.5, 1.0], [0.0, 1.0, 1.0]),
    "triangle": ([0.0, 0.5, 1.0], [0.0, 1.0, 0.0]),
    "sawtooth": ([0.0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1.0], [0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]),
}


def piecewise_linear(knots_x, knots_y, length: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, length)
    out = np.empty(length)
    kx = np.asarray(knots_x, dtype=float)
    ky = np.asarray(knots_y, dtype=float)
    for i, ti in enumerate(t):
        # the last knot pair whose span contains t (handles vertical jumps)
        seg = max(np.searchsorted(kx, ti, side="right") - 1, 0)
        seg = min(seg, len(kx) - 2)
        x0, x1 = kx[seg], kx[seg + 1]
        y0, y1 = ky[seg], ky[seg + 1]
        out[i] = y0 if x1 == x0 else y0 + (y1 - y0) * (ti - x0) / (x1 - x0)
    return out


def shape_families(n_per_class: int = 30, length: int = 200, noise: float = 0.05,
                   families=None, znormalize: bool = True, seed: int = 0) -> Dataset:
    """Series drawn from distinct piecewise-linear shape families plus Gaussian noise.

    ``noise`` is the noise standard deviation as a fraction of the clean
    signal range. Series are z-normalised afterwards by default, as in the
    UCR archive; the default SEP grid assumes values of that scale.
    """
    rng = np.random.default_rng(seed)
    names = list(FAMILIES) if families is None else list(families)
    series = []
    for label, name in enumerate(names):
        kx, ky = FAMILIES[name]
        clean = piecewise_linear(kx, ky, length)
        span = np.ptp(clean)
        for _ in range(n_per_class):
            values = clean + rng.normal(0.0, noise * span, size=length)
            series.append((label, values))
    ds = Dataset(
        "synthetic",
        tuple(TimeSeries(i, lab, v) for i, (lab, v) in enumerate(series)),
        tuple(float(i) for i in range(len(names))),
    )
    return ds.znormalized() if znormalize else ds
