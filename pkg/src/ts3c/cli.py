"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error, 3 pipeline error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .baseline_distances import DEFAULT_ALPHA_GRID, dddtw_hc, ed_hc
from .dataset_io import ResultRow, find_ucr_pairs, load_ucr, write_results, format_row, RESULT_HEADER
from .errors import DataFormatError, DegeneratePartitionError, PipelineError
from .pipeline import DEFAULT_GRID, STRATEGIES, run, sweep
from .validity import INDEX_NAMES, rand_index

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_PIPELINE = 3

log = logging.getLogger("ts3c")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> list[float]:
    """``"10,20,30"`` or ``"start:stop:step"`` (stop inclusive)."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            count = int(round((stop - start) / step)) + 1
            return [round(start + i * step, 10) for i in range(count)]
        values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}") from None
    if not values:
        raise UsageError("empty grid")
    return values


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _cluster_count(text):
    if text == "auto":
        return None
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("L must be >= 2 or 'auto'")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ts3c", description="Two-stage segmentation-clustering of time series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(p):
        p.add_argument("--train", required=True, type=Path, help="UCR-format file (or the only file)")
        p.add_argument("--test", type=Path, help="optional second file appended after --train")
        p.add_argument("--znorm", action="store_true", help="z-normalise every series")

    def model_args(p):
        p.add_argument("--k", type=_positive_int, default=2, help="segment clusters per series")
        p.add_argument("--degree", type=_positive_int, default=1, help="polynomial degree")
        p.add_argument("--grid", help="SEP_max grid, '10,20' or 'start:stop:step' (default 10:100:10)")
        p.add_argument("--standardize", action="store_true",
                       help="standardise mapped-series columns before the final clustering")

    p = sub.add_parser("cluster", help="cluster one dataset")
    data_args(p)
    model_args(p)
    p.add_argument("--strategy", choices=STRATEGIES, required=True)
    p.add_argument("--sep-max", type=float, help="fixed SEP_max instead of a sweep")
    p.add_argument("--L", dest="n_clusters", type=_cluster_count, default=None,
                   help="number of final clusters, or 'auto' for the number of classes")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--out", type=Path, help="results CSV (default: stdout)")

    p = sub.add_parser("bench", help="cluster every *_TRAIN/*_TEST pair in a directory")
    p.add_argument("--dir", required=True, type=Path)
    p.add_argument("--strategy", choices=STRATEGIES, required=True)
    p.add_argument("--jobs", type=_positive_int, default=1, help="datasets processed in parallel")
    p.add_argument("--znorm", action="store_true")
    model_args(p)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("baseline", help="DD_DTW or Euclidean hierarchical clustering baseline")
    data_args(p)
    p.add_argument("--method", choices=("dddtw-hc", "ed-hc"), required=True)
    p.add_argument("--alpha-grid", default="0:1:0.01")
    p.add_argument("--band", type=int, default=None, help="Sakoe-Chiba half-width")
    p.add_argument("--L", dest="n_clusters", type=_cluster_count, default=None)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("indices", help="print every internal index per SEP_max value")
    data_args(p)
    model_args(p)
    p.add_argument("--sep-max", help="one value or a comma list (default: the grid)")
    p.add_argument("--L", dest="n_clusters", type=_cluster_count, default=None)
    return parser


def _load(args):
    ds = load_ucr(args.train, args.test)
    return ds.znormalized() if args.znorm else ds


def _resolve_clusters(ds, n_clusters):
    if n_clusters is not None:
        return n_clusters
    if not ds.labeled or ds.num_classes < 2:
        raise UsageError("cannot infer L from the labels; pass --L N")
    return ds.num_classes


def _grid(args, fixed=None):
    if fixed is not None:
        return [fixed] if isinstance(fixed, float) else parse_grid(fixed)
    return parse_grid(args.grid) if args.grid else list(DEFAULT_GRID)


def _emit(rows, out):
    if out is None:
        print(",".join(RESULT_HEADER))
        for row in rows:
            print(",".join(format_row(row)))
    else:
        write_results(rows, out)


def cmd_cluster(args):
    ds = _load(args)
    n_clusters = _resolve_clusters(ds, args.n_clusters)
    grid = _grid(args, args.sep_max)
    t0 = time.perf_counter()
    result = run(ds, args.strategy, grid, n_clusters, args.k, args.degree,
                 standardize=args.standardize, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    _emit([ResultRow(ds.name, f"ts3c_{args.strategy}", result.chosen.sep_max, result.ri, elapsed)], args.out)


def _bench_one(task):
    name, train, test, strategy, k, degree, grid, znorm, standardize = task
    ds = load_ucr(train, test, name=name)
    if znorm:
        ds = ds.znormalized()
    t0 = time.perf_counter()
    result = run(ds, strategy, grid, ds.num_classes, k, degree, standardize=standardize)
    return ResultRow(name, f"ts3c_{strategy}", result.chosen.sep_max, result.ri, time.perf_counter() - t0)


def cmd_bench(args):
    pairs = find_ucr_pairs(args.dir)
    if not pairs:
        raise DataFormatError(f"no *_TRAIN files under {args.dir}")
    grid = _grid(args)
    tasks = [(name, train, test, args.strategy, args.k, args.degree, grid, args.znorm, args.standardize)
             for name, train, test in pairs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, tasks))
    else:
        rows = []
        for task in tasks:
            log.info("dataset %s", task[0])
            rows.append(_bench_one(task))
    write_results(rows, args.out)


def cmd_baseline(args):
    ds = _load(args)
    n_clusters = _resolve_clusters(ds, args.n_clusters)
    t0 = time.perf_counter()
    if args.method == "dddtw-hc":
        alphas = parse_grid(args.alpha_grid) if args.alpha_grid else list(DEFAULT_ALPHA_GRID)
        if any(not 0.0 <= a <= 1.0 for a in alphas):
            raise UsageError("alpha values must lie in [0, 1]")
        result = dddtw_hc(ds, n_clusters, alphas, band=args.band)
    else:
        result = ed_hc(ds, n_clusters)
    elapsed = time.perf_counter() - t0
    ri = rand_index(result.partition, ds.labels) if ds.labeled else None
    method = args.method.replace("-", "_")
    _emit([ResultRow(ds.name, method, result.alpha, ri, elapsed)], args.out)


def cmd_indices(args):
    ds = _load(args)
    n_clusters = _resolve_clusters(ds, args.n_clusters)
    grid = _grid(args, args.sep_max)
    entries = sweep(ds, grid, n_clusters, args.k, args.degree, standardize=args.standardize)
    cols = ["sep_max", *INDEX_NAMES, "rand_index"]
    print("\t".join(cols))
    for e in entries:
        if not e.ok:
            print(f"{e.sep_max:g}\tskipped: {e.skipped}")
            continue
        ri = rand_index(e.partition, ds.labels) if ds.labeled else float("nan")
        values = [getattr(e.report, n) for n in INDEX_NAMES] + [ri]
        print("\t".join([f"{e.sep_max:g}"] + [f"{v:.6g}" for v in values]))


COMMANDS = {"cluster": cmd_cluster, "bench": cmd_bench, "baseline": cmd_baseline, "indices": cmd_indices}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    np.seterr(all="ignore")
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ts3c: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataFormatError, OSError) as exc:
        print(f"ts3c: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (PipelineError, DegeneratePartitionError) as exc:
        print(f"ts3c: pipeline error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except ValueError as exc:
        print(f"ts3c: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
