"""End-to-end runs: sweep the SEP threshold, pick a setting, score it."""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset_io import Dataset
from .errors import DegeneratePartitionError, PipelineError
from .hier_clustering import Partition, ward_cluster
from .series_mapping import build_mapped_dataset, mapped_matrix
from .validity import INDEX_NAMES, IndexReport, index_report, rand_index

log = logging.getLogger(__name__)

DEFAULT_GRID = tuple(float(v) for v in range(10, 101, 10))
CH = "ch"
MV = "mv"
STRATEGIES = (CH, MV)


@dataclass(frozen=True)
class SweepEntry:
    sep_max: float
    partition: Partition | None
    report: IndexReport | None
    wall_seconds: float
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        return self.skipped is None


@dataclass(frozen=True)
class RunResult:
    strategy: str
    chosen: SweepEntry
    ri: float | None
    all_entries: tuple[SweepEntry, ...]
    votes: dict[float, int] = field(default_factory=dict)


def _standardize(x: np.ndarray) -> np.ndarray:
    sd = x.std(axis=0)
    return (x - x.mean(axis=0)) / np.where(sd > 0, sd, 1.0)


def evaluate(dataset: Dataset, sep_max: float, n_clusters: int, k: int = 2, degree: int = 1,
             standardize: bool = False, jobs: int = 1, backend: str | None = None) -> SweepEntry:
    """Map, cluster into ``n_clusters`` groups and score one threshold."""
    t0 = time.perf_counter()
    mapped = build_mapped_dataset(dataset, sep_max, degree, k, jobs=jobs, backend=backend)
    x = mapped_matrix(mapped)
    if standardize:
        x = _standardize(x)
    part = ward_cluster(x, n_clusters, backend=backend)
    try:
        report = index_report(x, part)
    except DegeneratePartitionError as exc:
        log.info("sep_max=%g skipped: %s", sep_max, exc)
        return SweepEntry(sep_max, part, None, time.perf_counter() - t0, skipped=str(exc))
    return SweepEntry(sep_max, part, report, time.perf_counter() - t0)


def sweep(dataset: Dataset, grid: Sequence[float] = DEFAULT_GRID, n_clusters: int | None = None,
          k: int = 2, degree: int = 1, standardize: bool = False, jobs: int = 1,
          backend: str | None = None) -> list[SweepEntry]:
    """One :class:`SweepEntry` per grid value, in grid order.

    Grid values may be evaluated on ``jobs`` threads; the entries do not
    depend on it.
    """
    grid = [float(g) for g in grid]
    if not grid:
        raise ValueError("empty SEP_max grid")
    if n_clusters is None:
        n_clusters = dataset.num_classes
    if n_clusters < 2:
        raise ValueError("need at least two clusters")
    if n_clusters > len(dataset):
        raise ValueError(f"{n_clusters} clusters requested for {len(dataset)} series")

    def one(g):
        return evaluate(dataset, g, n_clusters, k, degree, standardize, backend=backend)

    if jobs > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, grid))
    return [one(g) for g in grid]


def _usable(entries):
    ok = [e for e in entries if e.ok]
    if not ok:
        raise PipelineError("every sweep entry was degenerate")
    return ok


def select_ch(entries: Sequence[SweepEntry]) -> SweepEntry:
    """Entry with the largest CH; ties go to the smaller SEP_max."""
    ok = _usable(entries)
    return min(ok, key=lambda e: (-e.report.ch, e.sep_max))


def count_votes(entries: Sequence[SweepEntry]) -> dict[float, int]:
    """Each internal index votes for the entry where it is best.

    Within one index, ties go to the smaller SEP_max.
    """
    ok = sorted(_usable(entries), key=lambda e: e.sep_max)
    votes = {e.sep_max: 0 for e in ok}
    for name in INDEX_NAMES:
        best = ok[0]
        for e in ok[1:]:
            if e.report.better(name, getattr(e.report, name), getattr(best.report, name)):
                best = e
        votes[best.sep_max] += 1
    return votes


def select_majority_voting(entries: Sequence[SweepEntry]) -> SweepEntry:
    """Most votes wins; ties go to the higher CH, then the smaller SEP_max."""
    ok = _usable(entries)
    votes = count_votes(ok)
    return min(ok, key=lambda e: (-votes[e.sep_max], -e.report.ch, e.sep_max))


def run(dataset: Dataset, strategy: str = CH, grid: Sequence[float] = DEFAULT_GRID,
        n_clusters: int | None = None, k: int = 2, degree: int = 1, standardize: bool = False,
        jobs: int = 1, backend: str | None = None) -> RunResult:
    """Sweep, select by ``strategy`` and attach the Rand index when labels exist."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    entries = sweep(dataset, grid, n_clusters, k, degree, standardize, jobs, backend)
    if strategy == CH:
        chosen = select_ch(entries)
        votes = {}
    else:
        chosen = select_majority_voting(entries)
        votes = count_votes(entries)
    ri = None
    if dataset.labeled:
        ri = rand_index(chosen.partition, dataset.labels)
    return RunResult(strategy, chosen, ri, tuple(entries), votes)
