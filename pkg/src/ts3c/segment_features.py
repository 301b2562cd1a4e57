"""Fixed-length feature vectors for segments.

A segment of any length maps to ``[slopes..., variance, skewness, autocorr]``,
i.e. the fit coefficients without the intercept followed by three
mean-centred statistics.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .segmentation import Segment

N_STATS = 3


def _centred(values):
    y = np.asarray(values, dtype=np.float64)
    if np.all(y == y[0]):
        return np.zeros_like(y)
    return y - y.mean()


def variance(values) -> float:
    """Population variance (divides by n)."""
    return float(np.mean(_centred(values) ** 2))


def skewness(values) -> float:
    """Third central moment over sigma^3 (population sigma); 0 for constant input."""
    dev = _centred(values)
    denom = float(np.mean(dev**2)) ** 1.5
    if denom == 0.0:  # also catches underflow of tiny variances
        return 0.0
    return float(np.mean(dev**3)) / denom


def autocorrelation(values) -> float:
    """Lag-1 autocovariance sum over the population variance.

    The sum is not divided by n, so its magnitude grows with the segment
    length. Returns 0 for constant input.
    """
    dev = _centred(values)
    var = float(np.mean(dev**2))
    if var == 0.0:
        return 0.0
    return float(np.dot(dev[:-1], dev[1:])) / var


@dataclass(frozen=True)
class MappedSegment:
    features: np.ndarray
    source_segment: Segment

    @property
    def variance(self) -> float:
        return float(self.features[-3])

    @property
    def mse(self) -> float:
        return self.source_segment.mse


def map_segment(segment: Segment, series_values) -> MappedSegment:
    values = np.asarray(series_values, dtype=np.float64)[segment.start : segment.end + 1]
    feats = np.concatenate(
        [segment.slopes, [variance(values), skewness(values), autocorrelation(values)]]
    )
    return MappedSegment(feats, segment)


def feature_length(degree: int) -> int:
    return degree + N_STATS
