"""First-stage summaries and the fixed-width vector for each series.

Each series becomes::

    [centroid_1 | extreme_1 | ... | centroid_k | extreme_k | MD | m]

where cluster ``j`` is the segment cluster matched to cluster ``j`` of the
reference series (dataset index 0), ``extreme_j`` is the member with the
highest variance, MD is the MSE difference between the segments farthest
from and closest to their own centroid, and ``m`` is the segment count.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset_io import Dataset, TimeSeries
from .hier_clustering import ward_cluster
from .segment_features import MappedSegment, feature_length, map_segment
from .segmentation import segment_series


@dataclass(frozen=True)
class ClusterSummary:
    centroid: np.ndarray
    extreme: np.ndarray

    def vector(self) -> np.ndarray:
        return np.concatenate([self.centroid, self.extreme])


@dataclass(frozen=True)
class SeriesSummary:
    summaries: tuple[ClusterSummary, ...]
    md: float
    m: int


@dataclass(frozen=True)
class MappedSeries:
    series_id: int
    vector: np.ndarray


def mapped_length(degree: int = 1, k: int = 2) -> int:
    return 2 * feature_length(degree) * k + 2


def summarize_series(segments: Sequence[MappedSegment], k: int = 2,
                     backend: str | None = None) -> SeriesSummary:
    """Cluster one series' mapped segments and summarise each cluster.

    Uses ``min(k, m)`` clusters; when ``m < k`` the last summary is repeated
    so that ``k`` summaries always come back.
    """
    if not segments:
        raise ValueError("a series needs at least one segment")
    if k < 1:
        raise ValueError("k must be >= 1")
    feats = np.vstack([s.features for s in segments])
    m = len(segments)
    part = ward_cluster(feats, min(k, m), backend=backend)
    summaries = []
    for j in range(part.k):
        members = part.members(j)
        variances = feats[members, -3]
        extreme = members[int(np.argmax(variances))]
        summaries.append(ClusterSummary(part.centroids[j].copy(), feats[extreme].copy()))
    while len(summaries) < k:
        summaries.append(summaries[-1])

    dist = np.linalg.norm(feats - part.centroids[part.assignment], axis=1)
    farthest = int(np.argmax(dist))
    closest = int(np.argmin(dist))
    md = segments[farthest].mse - segments[closest].mse
    return SeriesSummary(tuple(summaries), float(md), m)


def match_centroids(reference: Sequence[ClusterSummary], other: Sequence[ClusterSummary]) -> list[int]:
    """Greedy matching of ``other``'s clusters to the reference order.

    Repeatedly pairs the globally closest unmatched (reference, other)
    centroids. Returns ``perm`` such that ``other[perm[j]]`` aligns with
    ``reference[j]``.
    """
    k = len(reference)
    if len(other) != k:
        raise ValueError("summary lists differ in length")
    ref = np.vstack([s.centroid for s in reference])
    oth = np.vstack([s.centroid for s in other])
    dist = np.linalg.norm(ref[:, None, :] - oth[None, :, :], axis=2)
    order = np.argsort(dist, axis=None, kind="stable")
    perm = [-1] * k
    used = [False] * k
    matched = 0
    for flat in order:
        r, o = divmod(int(flat), k)
        if perm[r] >= 0 or used[o]:
            continue
        perm[r] = o
        used[o] = True
        matched += 1
        if matched == k:
            break
    return perm


def summarize_time_series(series: TimeSeries, sep_max: float, degree: int = 1, k: int = 2,
                          backend: str | None = None) -> SeriesSummary:
    seg = segment_series(series, sep_max, degree, backend=backend)
    mapped = [map_segment(s, series.values) for s in seg.segments]
    return summarize_series(mapped, k, backend=backend)


def assemble(summary: SeriesSummary, perm: Sequence[int]) -> np.ndarray:
    parts = [summary.summaries[p].vector() for p in perm]
    return np.concatenate(parts + [np.array([summary.md, float(summary.m)])])


def build_mapped_dataset(dataset: Dataset, sep_max: float, degree: int = 1, k: int = 2,
                         jobs: int = 1, backend: str | None = None) -> list[MappedSeries]:
    """Map every series of ``dataset`` to a vector of length ``2*(degree+3)*k + 2``.

    Per-series work may run on ``jobs`` threads; the result does not depend
    on it.
    """
    if len(dataset) == 0:
        raise ValueError("empty dataset")

    def one(s):
        return summarize_time_series(s, sep_max, degree, k, backend)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            summaries = list(pool.map(one, dataset.series))
    else:
        summaries = [one(s) for s in dataset.series]
    reference = summaries[0].summaries
    out = []
    for s, summ in zip(dataset.series, summaries):
        perm = match_centroids(reference, summ.summaries)
        out.append(MappedSeries(s.id, assemble(summ, perm)))
    return out


def mapped_matrix(mapped: Sequence[MappedSeries]) -> np.ndarray:
    return np.vstack([m.vector for m in mapped])
