"""Internal validity indices and the Rand index.

All internal indices take the clustered vectors and a :class:`Partition`
and use Euclidean distances. Partitions on which an index is undefined
raise :class:`DegeneratePartitionError` instead of returning NaN.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegeneratePartitionError
from .hier_clustering import Partition, compute_centroids

MAXIMIZE = "max"
MINIMIZE = "min"

ORIENTATION = {
    "sse": MINIMIZE,
    "nsse": MINIMIZE,
    "ch": MAXIMIZE,
    "si": MAXIMIZE,
    "db": MINIMIZE,
    "du_gd33": MAXIMIZE,
    "du_gd43": MAXIMIZE,
    "du_gd53": MAXIMIZE,
    "cop": MINIMIZE,
}
INDEX_NAMES = tuple(ORIENTATION)
DUNN_VARIANTS = ("GD33", "GD43", "GD53")


@dataclass(frozen=True)
class IndexReport:
    sse: float
    nsse: float
    ch: float
    si: float
    db: float
    du_gd33: float
    du_gd43: float
    du_gd53: float
    cop: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)

    def better(self, name: str, a: float, b: float) -> bool:
        """True if value ``a`` is strictly better than ``b`` for index ``name``."""
        return a > b if ORIENTATION[name] == MAXIMIZE else a < b


class _Ctx:
    """Shared quantities for one (points, partition) pair, computed lazily."""

    def __init__(self, points, partition: Partition):
        x = np.asarray(points, dtype=np.float64)
        if x.ndim == 1:
            x = x[:, None]
        if x.shape[0] != len(partition):
            raise ValueError("partition size does not match the number of points")
        self.x = x
        self.assign = partition.assignment
        self.k = partition.k
        self.t = x.shape[0]
        # never trust partition.centroids: they may belong to other points
        self.centroids = compute_centroids(x, self.assign, self.k)
        self.members = [np.flatnonzero(self.assign == j) for j in range(self.k)]
        self.sizes = np.array([m.size for m in self.members], dtype=np.float64)
        self._dist = None
        self._to_centroid = None
        self._cdist = None

    @property
    def dist(self) -> np.ndarray:
        if self._dist is None:
            self._dist = _euclidean_matrix(self.x)
        return self._dist

    @property
    def to_centroid(self) -> np.ndarray:
        """Distance of every point to its own cluster centroid."""
        if self._to_centroid is None:
            self._to_centroid = np.linalg.norm(self.x - self.centroids[self.assign], axis=1)
        return self._to_centroid

    @property
    def centroid_dist(self) -> np.ndarray:
        if self._cdist is None:
            self._cdist = _euclidean_matrix(self.centroids)
        return self._cdist

    def need_k2(self, index):
        if self.k < 2:
            raise DegeneratePartitionError(index, "needs at least two clusters")


def _euclidean_matrix(x) -> np.ndarray:
    n = x.shape[0]
    sq = np.zeros((n, n))
    for col in x.T:
        diff = col[:, None] - col[None, :]
        sq += diff * diff
    return np.sqrt(sq)


def _ctx(points, partition):
    return points if isinstance(points, _Ctx) else _Ctx(points, partition)


def sse(points, partition: Partition | None = None) -> float:
    """Mean squared distance of each point to its cluster centroid."""
    c = _ctx(points, partition)
    return float(np.sum(c.to_centroid**2) / c.t)


def nsse(points, partition: Partition | None = None, literal: bool = False) -> float:
    """SSE over the mean pairwise centroid distance.

    ``literal=True`` uses ``(T-1)! * sum_{i<j} ED(c_i, c_j)`` as the
    denominator instead, evaluated in log space.
    """
    c = _ctx(points, partition)
    c.need_k2("nsse")
    iu = np.triu_indices(c.k, k=1)
    total = float(np.sum(c.centroid_dist[iu]))
    if total == 0.0:
        raise DegeneratePartitionError("nsse", "all centroids coincide")
    s = sse(c)
    if literal:
        if s == 0.0:
            return 0.0
        return math.exp(math.log(s) - math.lgamma(c.t) - math.log(total))
    return s / (total / len(iu[0]))


def calinski_harabasz(points, partition: Partition | None = None) -> float:
    """``Tr(S_B) (T - k) / (Tr(S_W) (k - 1))``; ``inf`` when ``Tr(S_W) = 0``."""
    c = _ctx(points, partition)
    c.need_k2("ch")
    grand = c.x.mean(axis=0)
    tr_b = float(np.sum(c.sizes * np.sum((c.centroids - grand) ** 2, axis=1)))
    tr_w = float(np.sum(c.to_centroid**2))
    if tr_w == 0.0:
        return math.inf
    return tr_b * (c.t - c.k) / (tr_w * (c.k - 1))


def silhouette(points, partition: Partition | None = None) -> float:
    """Mean silhouette; the point itself counts in its own cluster's mean distance."""
    c = _ctx(points, partition)
    c.need_k2("si")
    mean_to = np.column_stack([c.dist[:, m].mean(axis=1) for m in c.members])
    idx = np.arange(c.t)
    a = mean_to[idx, c.assign]
    mean_to[idx, c.assign] = np.inf
    b = mean_to.min(axis=1)
    top = np.maximum(a, b)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(top > 0, (b - a) / np.where(top > 0, top, 1.0), 0.0)
    return float(s.mean())


def davies_bouldin(points, partition: Partition | None = None) -> float:
    c = _ctx(points, partition)
    c.need_k2("db")
    alpha = np.array([c.to_centroid[m].mean() for m in c.members])
    cd = c.centroid_dist.copy()
    off = ~np.eye(c.k, dtype=bool)
    if np.any(cd[off] == 0.0):
        raise DegeneratePartitionError("db", "two centroids coincide")
    ratio = (alpha[:, None] + alpha[None, :]) / np.where(off, cd, 1.0)
    ratio[~off] = -np.inf
    return float(ratio.max(axis=1).mean())


def _point_symmetry_diameter(c: _Ctx, j: int) -> float:
    m = c.members[j]
    pts = c.x[m]
    reflected = 2.0 * c.centroids[j] - pts
    # nearest member to each reflected point, in row blocks
    nearest = np.empty(m.size)
    for lo in range(0, m.size, 256):
        block = reflected[lo : lo + 256]
        d = np.sqrt(np.sum((block[:, None, :] - pts[None, :, :]) ** 2, axis=2))
        nearest[lo : lo + 256] = d.min(axis=1)
    return 2.0 / m.size * float(np.sum(nearest))


def dunn(points, partition: Partition | None = None, variant: str = "GD33") -> float:
    """Generalised Dunn index ``min delta(C_i, C_j) / max diam(C_m)``.

    GD33: mean cross-cluster distance over max pairwise diameter.
    GD43: centroid distance over max pairwise diameter.
    GD53: mean distance-to-own-centroid of the two clusters over the
    point-symmetry diameter. ``inf`` when every diameter is zero.
    """
    variant = variant.upper()
    if variant not in DUNN_VARIANTS:
        raise ValueError(f"unknown Dunn variant {variant!r}")
    c = _ctx(points, partition)
    c.need_k2("du_" + variant.lower())
    if variant == "GD53":
        diam = max(_point_symmetry_diameter(c, j) for j in range(c.k))
        spread = np.array([c.to_centroid[m].sum() for m in c.members])
    else:
        diam = max(float(c.dist[np.ix_(m, m)].max()) for m in c.members)
    if diam == 0.0:
        return math.inf
    best = math.inf
    for i in range(c.k):
        for j in range(i + 1, c.k):
            if variant == "GD33":
                delta = float(c.dist[np.ix_(c.members[i], c.members[j])].mean())
            elif variant == "GD43":
                delta = float(c.centroid_dist[i, j])
            else:
                delta = float((spread[i] + spread[j]) / (c.sizes[i] + c.sizes[j]))
            best = min(best, delta)
    return best / diam


def cop(points, partition: Partition | None = None) -> float:
    """Mean within-cluster centroid distance over the min-max distance to outsiders."""
    c = _ctx(points, partition)
    c.need_k2("cop")
    total = 0.0
    for j, m in enumerate(c.members):
        outside = np.flatnonzero(c.assign != j)
        if outside.size == 0:
            raise DegeneratePartitionError("cop", "a cluster holds every point")
        far = c.dist[np.ix_(outside, m)].max(axis=1).min()
        if far == 0.0:
            raise DegeneratePartitionError("cop", "an outside point coincides with a whole cluster")
        total += c.to_centroid[m].sum() / (m.size * far)
    return float(total / c.t)


def index_report(points, partition: Partition) -> IndexReport:
    """All nine internal indices on one partition."""
    c = _Ctx(points, partition)
    return IndexReport(
        sse=sse(c),
        nsse=nsse(c),
        ch=calinski_harabasz(c),
        si=silhouette(c),
        db=davies_bouldin(c),
        du_gd33=dunn(c, variant="GD33"),
        du_gd43=dunn(c, variant="GD43"),
        du_gd53=dunn(c, variant="GD53"),
        cop=cop(c),
    )


def _pairs(n: int) -> int:
    return n * (n - 1) // 2


def rand_index(predicted, truth) -> float:
    """Fraction of item pairs on which the clustering and the classes agree."""
    pred = predicted.assignment if isinstance(predicted, Partition) else np.asarray(predicted)
    truth = np.asarray(truth)
    if pred.shape[0] != truth.shape[0]:
        raise ValueError("predicted and truth differ in length")
    t = pred.shape[0]
    if t < 2:
        raise ValueError("the Rand index needs at least two items")
    _, p = np.unique(pred, return_inverse=True)
    _, q = np.unique(truth, return_inverse=True)
    table = np.zeros((p.max() + 1, q.max() + 1), dtype=np.int64)
    np.add.at(table, (p, q), 1)
    same_both = sum(_pairs(int(v)) for v in table.ravel())
    same_cluster = sum(_pairs(int(v)) for v in table.sum(axis=1))
    same_class = sum(_pairs(int(v)) for v in table.sum(axis=0))
    total = _pairs(t)
    agree = total + 2 * same_both - same_cluster - same_class
    return agree / total
