"""Two-stage segmentation-clustering (TS3C) for whole time series clustering.

Each series is segmented with a growing-window least-squares fit, its
segments are mapped to fixed-length feature vectors and clustered, and the
per-series cluster summaries form a fixed-width vector that is clustered
again across the dataset. The segmentation threshold is chosen with
internal validity indices.
"""
from ._backend import BACKEND
from .dataset_io import Dataset, TimeSeries, load_ucr, write_results
from .hier_clustering import Partition, ward_cluster
from .pipeline import run, select_ch, select_majority_voting, sweep
from .validity import index_report, rand_index

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Dataset",
    "Partition",
    "TimeSeries",
    "index_report",
    "load_ucr",
    "rand_index",
    "run",
    "select_ch",
    "select_majority_voting",
    "sweep",
    "ward_cluster",
    "write_results",
]
