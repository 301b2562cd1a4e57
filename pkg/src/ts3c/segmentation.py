"""Growing-window least-squares segmentation.

A window grows one point at a time while a running polynomial fit is kept
up to date from power sums, so each step costs O(c^3) regardless of the
window length. When the standard error of prediction (SEP) of the window
first exceeds ``sep_max`` the segment is closed at the previous point and
the next window starts there, so neighbouring segments share a cut point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_kernels
from .dataset_io import TimeSeries

SEP_EPS = 1e-8


class RunningFit:
    """Running sums for a degree-``c`` least-squares fit on x = 0, 1, 2, ...

    Holds ``sum x^j`` for ``j <= 2c``, ``sum x^j y`` for ``j <= c`` and
    ``sum y^2``; that is enough to solve the normal equations and recover
    the residual sum of squares.
    """

    __slots__ = ("degree", "n", "px", "pxy", "syy")

    def __init__(self, degree: int = 1):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        self.n = 0
        self.px = [0.0] * (2 * degree + 1)
        self.pxy = [0.0] * (degree + 1)
        self.syy = 0.0

    @classmethod
    def from_values(cls, values, degree: int = 1) -> "RunningFit":
        fit = cls(degree)
        for v in values:
            fit.push(v)
        return fit

    def copy(self) -> "RunningFit":
        other = RunningFit.__new__(RunningFit)
        other.degree = self.degree
        other.n = self.n
        other.px = list(self.px)
        other.pxy = list(self.pxy)
        other.syy = self.syy
        return other

    def push(self, y: float) -> "RunningFit":
        y = float(y)
        x = float(self.n)
        xp = 1.0
        for j in range(2 * self.degree + 1):
            self.px[j] += xp
            if j <= self.degree:
                self.pxy[j] += xp * y
            xp *= x
        self.syy += y * y
        self.n += 1
        return self

    @property
    def mean(self) -> float:
        return self.pxy[0] / self.n

    def coefficients(self) -> np.ndarray:
        """Fit coefficients in ascending power order, intercept first.

        Windows with fewer than ``degree + 1`` points are fit with the
        highest usable degree; the remaining coefficients are zero.
        """
        c = self.degree
        if self.n == 0:
            return np.zeros(c + 1)
        if c == 1:
            n, sx, sxx = self.px[0], self.px[1], self.px[2]
            sy, sxy = self.pxy[0], self.pxy[1]
            den = n * sxx - sx * sx
            slope = 0.0 if den == 0.0 else (n * sxy - sx * sy) / den
            return np.array([(sy - slope * sx) / n, slope])
        usable = min(c, self.n - 1)
        a = np.array([[self.px[i + j] for j in range(usable + 1)] for i in range(usable + 1)])
        b = np.array(self.pxy[: usable + 1])
        beta = np.zeros(c + 1)
        beta[: usable + 1] = np.linalg.solve(a, b)
        return beta

    def sse(self) -> float:
        beta = self.coefficients()
        if self.degree == 1:
            s = self.syy - beta[0] * self.pxy[0] - beta[1] * self.pxy[1]
        else:
            s = self.syy - float(np.dot(beta, self.pxy))
        return max(s, 0.0)

    def sep(self) -> float:
        return sep(self)


def incremental_fit_update(state: RunningFit, new_point: float) -> RunningFit:
    """Return a new fit state with ``new_point`` appended at the next abscissa."""
    return state.copy().push(new_point)


def sep(state: RunningFit) -> float:
    """``sqrt(SSE) / |mean|``, with the mean clamped away from zero at 1e-8."""
    return math.sqrt(state.sse()) / max(abs(state.mean), SEP_EPS)


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    coefficients: np.ndarray
    sse: float
    sep: float
    degenerate: bool = False

    @property
    def point_count(self) -> int:
        return self.end - self.start + 1

    @property
    def mse(self) -> float:
        return self.sse / self.point_count

    @property
    def slopes(self) -> np.ndarray:
        return self.coefficients[1:]


@dataclass(frozen=True)
class Segmentation:
    series_id: int
    segments: tuple[Segment, ...] = field(default=())

    @property
    def cut_points(self) -> list[int]:
        return [s.end for s in self.segments[:-1]]

    def __len__(self):
        return len(self.segments)


def fit_segment(values, start: int, end: int, degree: int = 1, degenerate: bool = False) -> Segment:
    fit = RunningFit.from_values(values[start : end + 1], degree)
    return Segment(start, end, fit.coefficients(), fit.sse(), fit.sep(), degenerate)


def _bounds_generic(values, sep_max, degree, min_len):
    n_total = len(values)
    if n_total < min_len:
        return [(0, n_total - 1)]
    bounds = []
    start = 0
    fit = RunningFit(degree).push(values[0])
    for j in range(1, n_total):
        fit.push(values[j])
        if j - start + 1 >= min_len and fit.sep() > sep_max:
            bounds.append((start, j - 1))
            start = j - 1
            fit = RunningFit(degree).push(values[start]).push(values[j])
    bounds.append((start, n_total - 1))
    return bounds


def segment_bounds(values, sep_max: float, degree: int = 1, min_len: int | None = None,
                   backend: str | None = None) -> np.ndarray:
    """Inclusive ``(start, end)`` bounds of the greedy segmentation."""
    if min_len is None:
        min_len = degree + 2
    if not sep_max > 0:
        raise ValueError("sep_max must be positive")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if min_len < degree + 1:
        raise ValueError("min_len must be at least degree + 1")
    values = np.asarray(values, dtype=np.float64)
    if degree == 1:
        return get_kernels(backend).segment_linear(values, float(sep_max), int(min_len))
    return np.array(_bounds_generic(values, sep_max, degree, min_len), dtype=np.int64)


def segment_series(series: TimeSeries, sep_max: float, degree: int = 1,
                   min_len: int | None = None, backend: str | None = None) -> Segmentation:
    """Segment one series.

    Every segment but the last has ``sep <= sep_max`` (for the default
    ``min_len``). A series shorter than ``min_len`` comes back as a single
    segment flagged ``degenerate``.
    """
    if min_len is None:
        min_len = degree + 2
    values = series.values
    bounds = segment_bounds(values, sep_max, degree, min_len, backend)
    degenerate = len(values) < min_len
    segments = tuple(fit_segment(values, int(s), int(e), degree, degenerate) for s, e in bounds)
    return Segmentation(series.id, segments)
