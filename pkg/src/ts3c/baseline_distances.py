"""Distance measures for raw series and the DD_DTW hierarchical baseline."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import get_kernels
from .dataset_io import Dataset, as_matrix
from .hier_clustering import Partition, average_cluster, ward_cluster

DEFAULT_ALPHA_GRID = tuple(round(0.01 * i, 2) for i in range(101))


def euclidean(x, y) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError("Euclidean distance needs equal-length series")
    return float(np.sqrt(np.sum((x - y) ** 2)))


def _check_band(n, m, band):
    if band is None:
        return -1
    band = int(band)
    if band < 0:
        raise ValueError("band must be >= 0")
    if band < abs(n - m):
        raise ValueError(f"band {band} admits no warping path for lengths {n} and {m}")
    return band


def dtw(x, y, band: int | None = None, backend: str | None = None) -> float:
    """DTW with squared pointwise cost, square-rooted at the end.

    ``band`` is the Sakoe-Chiba half-width (``|i - j| <= band``).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size == 0 or y.size == 0:
        raise ValueError("DTW needs non-empty series")
    b = _check_band(x.size, y.size, band)
    return float(get_kernels(backend).dtw(x, y, b))


def derivative_series(x) -> np.ndarray:
    """Keogh-Pazzani derivative estimate; endpoints copy their neighbour."""
    x = np.asarray(x, dtype=np.float64)
    if x.size < 3:
        raise ValueError("derivative needs at least 3 points")
    d = np.empty_like(x)
    d[1:-1] = ((x[1:-1] - x[:-2]) + (x[2:] - x[:-2]) / 2.0) / 2.0
    d[0] = d[1]
    d[-1] = d[-2]
    return d


def _check_alpha(alpha):
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")


def dd_dtw(x, y, alpha: float, band: int | None = None, backend: str | None = None) -> float:
    """``(1 - alpha) * DTW(x, y) + alpha * DTW(x', y')``."""
    _check_alpha(alpha)
    plain = dtw(x, y, band, backend)
    deriv = dtw(derivative_series(x), derivative_series(y), band, backend)
    return (1.0 - alpha) * plain + alpha * deriv


def dtw_matrix(series: Sequence, band: int | None = None, backend: str | None = None) -> np.ndarray:
    series = [np.asarray(s, dtype=np.float64) for s in series]
    lengths = [s.size for s in series]
    if band is not None and len(series) > 1:
        _check_band(min(lengths), max(lengths), band)
    return get_kernels(backend).dtw_matrix(series, -1 if band is None else int(band))


@dataclass(frozen=True)
class DistanceParts:
    """DTW matrices on the raw series and on their derivatives."""

    plain: np.ndarray
    derivative: np.ndarray

    def combine(self, alpha: float) -> np.ndarray:
        _check_alpha(alpha)
        return (1.0 - alpha) * self.plain + alpha * self.derivative


def distance_parts(dataset: Dataset, band: int | None = None, backend: str | None = None) -> DistanceParts:
    raw = [s.values for s in dataset.series]
    return DistanceParts(
        dtw_matrix(raw, band, backend),
        dtw_matrix([derivative_series(v) for v in raw], band, backend),
    )


def medoid(distances: np.ndarray, members=None) -> int:
    """Member with the smallest distance sum to the others (lowest index on ties)."""
    if members is None:
        members = np.arange(distances.shape[0])
    members = np.asarray(members)
    sums = distances[np.ix_(members, members)].sum(axis=1)
    return int(members[int(np.argmin(sums))])


def intergroup_variance(distances: np.ndarray, partition: Partition) -> float:
    """``sum_l |G_l| * d(medoid_l, global medoid)^2``."""
    center = medoid(distances)
    total = 0.0
    for j in range(partition.k):
        members = partition.members(j)
        total += members.size * distances[medoid(distances, members), center] ** 2
    return float(total)


@dataclass(frozen=True)
class BaselineResult:
    partition: Partition
    alpha: float | None
    scores: tuple[tuple[float, float], ...] = ()


def dddtw_hc(dataset: Dataset, n_clusters: int, alpha_grid: Sequence[float] = DEFAULT_ALPHA_GRID,
             band: int | None = None, backend: str | None = None,
             parts: DistanceParts | None = None) -> BaselineResult:
    """Average-linkage clustering on DD_DTW, with alpha picked by intergroup variance.

    The alpha whose partition has the largest intergroup variance wins;
    ties go to the smallest alpha.
    """
    if n_clusters < 2:
        raise ValueError("need at least two clusters")
    alphas = [float(a) for a in alpha_grid]
    if not alphas:
        raise ValueError("alpha_grid is empty")
    for a in alphas:
        _check_alpha(a)
    if parts is None:
        parts = distance_parts(dataset, band, backend)
    best = None
    scores = []
    for alpha in sorted(set(alphas)):
        d = parts.combine(alpha)
        part = average_cluster(d, n_clusters, backend=backend)
        v = intergroup_variance(d, part)
        scores.append((alpha, v))
        if best is None or v > best[1]:
            best = (alpha, v, part)
    return BaselineResult(best[2], best[0], tuple(scores))


def ed_hc(dataset: Dataset, n_clusters: int, backend: str | None = None) -> BaselineResult:
    """Ward clustering on the raw (equal-length) series."""
    x = as_matrix(dataset.series)
    return BaselineResult(ward_cluster(x, n_clusters, backend=backend), None)
