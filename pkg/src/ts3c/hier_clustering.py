"""Agglomerative hierarchical clustering used by both clustering stages.

Merging runs on a square dissimilarity matrix with the Lance-Williams
update. Ward linkage works on squared Euclidean distances; average linkage
is available for precomputed distance matrices (DTW and friends).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import get_kernels

WARD = "ward"
AVERAGE = "average"
_METHOD_CODE = {WARD: 0, AVERAGE: 1}


@dataclass(frozen=True)
class Partition:
    """Cluster assignment ``0..k-1`` per item, with centroids when points are known."""

    assignment: np.ndarray
    k: int
    centroids: np.ndarray | None = None

    def __post_init__(self):
        assignment = np.asarray(self.assignment, dtype=np.int64)
        assignment.setflags(write=False)
        object.__setattr__(self, "assignment", assignment)
        present = np.unique(assignment)
        if not np.array_equal(present, np.arange(self.k)):
            raise ValueError("every cluster id in 0..k-1 must be used")

    @classmethod
    def from_labels(cls, labels, points=None) -> "Partition":
        """Relabel arbitrary labels densely by first appearance."""
        dense = relabel_first_appearance(labels)
        k = int(dense.max()) + 1 if dense.size else 0
        centroids = None if points is None else compute_centroids(points, dense, k)
        return cls(dense, k, centroids)

    def __len__(self):
        return int(self.assignment.size)

    def members(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == j)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    def with_centroids(self, points) -> "Partition":
        return Partition(self.assignment, self.k, compute_centroids(points, self.assignment, self.k))


def relabel_first_appearance(labels) -> np.ndarray:
    labels = np.asarray(labels)
    mapping: dict = {}
    out = np.empty(labels.size, dtype=np.int64)
    for i, lab in enumerate(labels.tolist()):
        out[i] = mapping.setdefault(lab, len(mapping))
    return out


def compute_centroids(points, assignment, k) -> np.ndarray:
    x = _as_points(points)
    assignment = np.asarray(assignment)
    return np.vstack([x[assignment == j].mean(axis=0) for j in range(k)])


@dataclass(frozen=True)
class Dendrogram:
    """Merge history over ``n`` items.

    ``merges[s] = (a, b)`` with ``a < b`` means that at step ``s`` the
    cluster held in slot ``b`` was absorbed into slot ``a``. ``costs`` are
    the merge heights: the Ward increase in within-cluster sum of squares
    for Ward linkage, the mean pairwise dissimilarity for average linkage.
    """

    n: int
    merges: np.ndarray
    costs: np.ndarray
    method: str = WARD

    def __len__(self):
        return self.n - 1


def _as_points(points) -> np.ndarray:
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError("points must be a sequence of equal-length vectors")
    return x


def squared_distances(points) -> np.ndarray:
    x = _as_points(points)
    n = x.shape[0]
    d = np.zeros((n, n))
    # one dimension at a time keeps memory at O(n^2)
    for col in x.T:
        diff = col[:, None] - col[None, :]
        d += diff * diff
    return d


def linkage(points=None, method: str = WARD, distances=None, backend: str | None = None) -> Dendrogram:
    """Build the full dendrogram.

    Ward takes ``points``; average linkage takes either ``points``
    (Euclidean distances) or a precomputed square ``distances`` matrix.
    """
    if method not in _METHOD_CODE:
        raise ValueError(f"unknown linkage {method!r}")
    if distances is None:
        if points is None:
            raise ValueError("points or distances required")
        d = squared_distances(points)
        if method == AVERAGE:
            d = np.sqrt(d)
    else:
        if method == WARD:
            raise ValueError("Ward linkage needs points, not a distance matrix")
        d = np.asarray(distances, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distances must be a square matrix")
    n = d.shape[0]
    if n == 0:
        raise ValueError("nothing to cluster")
    merges, heights = get_kernels(backend).agglomerate(d, _METHOD_CODE[method])
    if method == WARD:
        heights = heights / 2.0
    return Dendrogram(n, np.asarray(merges), np.asarray(heights), method)


def cut_dendrogram(d: Dendrogram, k: int) -> Partition:
    """Partition with ``k`` clusters: replay all but the last ``k - 1`` merges."""
    if not 1 <= k <= d.n:
        raise ValueError(f"k must be in 1..{d.n}, got {k}")
    parent = list(range(d.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in d.merges[: d.n - k]:
        ra, rb = find(int(a)), find(int(b))
        parent[rb] = ra
    roots = [find(i) for i in range(d.n)]
    return Partition(relabel_first_appearance(roots), k)


def ward_cluster(points: Sequence, k: int, backend: str | None = None) -> Partition:
    """Ward agglomerative clustering cut at ``k`` clusters, with centroids."""
    x = _as_points(points)
    if not 1 <= k <= x.shape[0]:
        raise ValueError(f"k must be in 1..{x.shape[0]}, got {k}")
    part = cut_dendrogram(linkage(x, WARD, backend=backend), k)
    return part.with_centroids(x)


def average_cluster(distances, k: int, backend: str | None = None) -> Partition:
    d = np.asarray(distances, dtype=np.float64)
    if not 1 <= k <= d.shape[0]:
        raise ValueError(f"k must be in 1..{d.shape[0]}, got {k}")
    return cut_dendrogram(linkage(method=AVERAGE, distances=d, backend=backend), k)
