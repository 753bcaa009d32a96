"""Rank-order image filtering with reproducible noise benchmarks."""

from .image import (
    BorderPolicy,
    GrayImage,
    Window,
    WindowStats,
    new_image,
    window_at,
    window_stats,
)
from .noise import NoiseKind, NoiseMask, NoiseSpec, SplitMix64, inject
from .filters import (
    FilterKind,
    FilterSpec,
    WindowStatsGrid,
    amf_filter,
    apply_filter,
    cwm_filter,
    median_filter,
    naive_stats_pass,
    sliding_stats_pass,
    weighted_median_filter,
)
from .metrics import MetricsReport, evaluate, mse, pona, psnr
from .pgm import (
    CorruptFileError,
    PgmError,
    PgmVariant,
    UnsupportedDepthError,
    UnsupportedFormatError,
    load_pgm,
    read_pgm,
    save_pgm,
    write_pgm,
)
from .sweep import (
    DEFAULT_DENSITIES,
    SweepAggregate,
    SweepConfig,
    SweepError,
    SweepReport,
    SweepRow,
    cell_seed,
    default_filters,
    report_to_csv,
    run_sweep,
    synthetic_textured,
)

__version__ = "0.1.0"

__all__ = [
    "BorderPolicy",
    "GrayImage",
    "Window",
    "WindowStats",
    "new_image",
    "window_at",
    "window_stats",
    "NoiseKind",
    "NoiseMask",
    "NoiseSpec",
    "SplitMix64",
    "inject",
    "FilterKind",
    "FilterSpec",
    "WindowStatsGrid",
    "amf_filter",
    "apply_filter",
    "cwm_filter",
    "median_filter",
    "naive_stats_pass",
    "sliding_stats_pass",
    "weighted_median_filter",
    "MetricsReport",
    "evaluate",
    "mse",
    "pona",
    "psnr",
    "CorruptFileError",
    "PgmError",
    "PgmVariant",
    "UnsupportedDepthError",
    "UnsupportedFormatError",
    "load_pgm",
    "read_pgm",
    "save_pgm",
    "write_pgm",
    "DEFAULT_DENSITIES",
    "SweepAggregate",
    "SweepConfig",
    "SweepError",
    "SweepReport",
    "SweepRow",
    "cell_seed",
    "default_filters",
    "report_to_csv",
    "run_sweep",
    "synthetic_textured",
    "__version__",
]
