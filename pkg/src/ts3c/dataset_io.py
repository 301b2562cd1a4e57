"""UCR-archive text loading and result-table output.

UCR files are line oriented: a class label followed by the series values,
separated by commas (2015 archive) or whitespace (older vintages).
"""
from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataFormatError

_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True)
class TimeSeries:
    id: int
    label: int | None
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("a time series needs a non-empty 1-D value array")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"series {self.id} contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class Dataset:
    """A set of series to cluster.

    ``class_values`` keeps the raw label read from file for each dense class
    id, so that a dataset can be written back unchanged.
    """

    name: str
    series: tuple[TimeSeries, ...]
    class_values: tuple[float, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        labeled = [s.label is not None for s in self.series]
        if any(labeled) and not all(labeled):
            raise ValueError("either every series is labeled or none is")
        for i, s in enumerate(self.series):
            if s.id != i:
                raise ValueError("series ids must equal load order")

    @property
    def labeled(self) -> bool:
        return bool(self.series) and self.series[0].label is not None

    @property
    def num_classes(self) -> int:
        if not self.labeled:
            return 1
        return len({s.label for s in self.series})

    @property
    def labels(self) -> np.ndarray | None:
        if not self.labeled:
            return None
        return np.array([s.label for s in self.series], dtype=np.int64)

    def __len__(self):
        return len(self.series)

    def znormalized(self) -> "Dataset":
        """Per-series z-normalisation; constant series are only centred."""
        out = []
        for s in self.series:
            v = s.values
            sd = v.std()
            z = (v - v.mean()) / sd if sd > 0 else v - v.mean()
            out.append(TimeSeries(s.id, s.label, z))
        return Dataset(self.name, tuple(out), self.class_values)


def _parse_file(path: Path) -> list[tuple[float, np.ndarray]]:
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            tokens = [t for t in _SPLIT.split(line) if t]
            try:
                numbers = [float(t) for t in tokens]
            except ValueError:
                bad = next(t for t in tokens if not _is_float(t))
                raise DataFormatError(f"non-numeric token {bad!r}", path, lineno) from None
            if not all(math.isfinite(x) for x in numbers):
                raise DataFormatError("non-finite value", path, lineno)
            if len(numbers) < 2:
                raise DataFormatError("a row needs a label and at least one value", path, lineno)
            if width is None:
                width = len(numbers)
            elif len(numbers) != width:
                raise DataFormatError(
                    f"expected {width - 1} values, found {len(numbers) - 1}", path, lineno
                )
            rows.append((numbers[0], np.array(numbers[1:], dtype=np.float64)))
    return rows


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def load_ucr(path_train, path_test=None, name: str | None = None) -> Dataset:
    """Load a UCR dataset, appending the test rows after the train rows.

    Labels are mapped to dense class ids ``0..L-1`` in order of first
    appearance across both files.
    """
    path_train = Path(path_train)
    rows = _parse_file(path_train)
    if path_test is not None:
        rows += _parse_file(Path(path_test))
    if not rows:
        raise DataFormatError("no data rows", path_train)
    class_ids: dict[float, int] = {}
    series = []
    for i, (raw_label, values) in enumerate(rows):
        cid = class_ids.setdefault(raw_label, len(class_ids))
        series.append(TimeSeries(i, cid, values))
    if name is None:
        name = dataset_name(path_train)
    return Dataset(name, tuple(series), tuple(class_ids))


def dataset_name(path) -> str:
    """``Coffee_TRAIN.txt`` -> ``Coffee``."""
    stem = Path(path).name
    stem = re.sub(r"\.(txt|tsv|csv|dat)$", "", stem, flags=re.I)
    return re.sub(r"_(TRAIN|TEST)$", "", stem, flags=re.I)


def write_ucr(dataset: Dataset, path) -> None:
    """Write comma-separated UCR rows with round-trip float precision.

    Unlabeled datasets get label 0 on every row.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for s in dataset.series:
            if s.label is None:
                label = 0.0
            elif dataset.class_values:
                label = dataset.class_values[s.label]
            else:
                label = float(s.label)
            fh.write(",".join([repr(float(label))] + [repr(float(v)) for v in s.values]))
            fh.write("\n")


@dataclass(frozen=True)
class ResultRow:
    dataset: str
    method: str
    sep_max: float | None
    rand_index: float | None
    time_s: float


RESULT_HEADER = ("dataset", "method", "sep_max", "rand_index", "time_s")


def _fmt_number(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:g}"


def format_row(row: ResultRow) -> list[str]:
    ri = "" if row.rand_index is None else f"{row.rand_index:.3f}"
    return [row.dataset, row.method, _fmt_number(row.sep_max), ri, repr(round(float(row.time_s), 3))]


def write_results(rows: Iterable[ResultRow], path) -> None:
    """Write result rows as CSV, in the order given."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_HEADER)
        for row in rows:
            writer.writerow(format_row(row))


def find_ucr_pairs(directory) -> list[tuple[str, Path, Path | None]]:
    """Find ``<name>_TRAIN[.ext]`` files (recursively) and their ``_TEST`` partners.

    Returned sorted by dataset name.
    """
    directory = Path(directory)
    pairs = []
    for train in sorted(directory.rglob("*")):
        if not train.is_file():
            continue
        m = re.match(r"^(.*)_TRAIN(\.(?:txt|tsv|csv|dat))?$", train.name, flags=re.I)
        if not m:
            continue
        suffix = m.group(2) or ""
        test = train.with_name(f"{m.group(1)}_TEST{suffix}")
        pairs.append((m.group(1), train, test if test.is_file() else None))
    pairs.sort(key=lambda p: (p[0], str(p[1])))
    return pairs


def as_matrix(series: Sequence[TimeSeries]) -> np.ndarray:
    """Stack equal-length series into a ``(T, N)`` array."""
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise ValueError("series have different lengths")
    return np.vstack([s.values for s in series])
