"""Rank-order filters over GrayImage: median, weighted median, center-weighted
median, and the adaptive median with a growing window.

Medians are exact order statistics of the (possibly replicated) window
multiset. Window sizes are odd, so no averaging of middle pairs ever happens.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .image import BorderPolicy, GrayImage


class FilterKind(Enum):
    MEDIAN = "median"
    WEIGHTED_MEDIAN = "wm"
    CENTER_WEIGHTED_MEDIAN = "cwm"
    ADAPTIVE_MEDIAN = "amf"


class WindowStatsGrid(NamedTuple):
    """Per-pixel window minimum, median, and maximum as full uint8 arrays."""

    s_min: np.ndarray
    s_med: np.ndarray
    s_max: np.ndarray


def _check_side(side):
    if not isinstance(side, (int, np.integer)) or isinstance(side, bool):
        raise ValueError(f"side must be an integer, got {side!r}")
    if side < 3 or side % 2 == 0:
        raise ValueError(f"side must be odd and >= 3, got {side}")


def sliding_stats_pass(
    image: GrayImage,
    side: int,
    border: BorderPolicy = BorderPolicy.REPLICATE,
) -> WindowStatsGrid:
    """min/median/max of the side x side window around every pixel.

    Runs the incremental histogram engine: one shared histogram per row,
    updated column-by-column instead of re-sorting each window.
    """
    _check_side(side)
    reflect = border == BorderPolicy.REFLECT
    mn, md, mx = _kernels.sliding_stats(image.pixels, side, reflect)
    return WindowStatsGrid(mn, md, mx)


def naive_stats_pass(
    image: GrayImage,
    side: int,
    border: BorderPolicy = BorderPolicy.REPLICATE,
) -> WindowStatsGrid:
    """Reference implementation of sliding_stats_pass: pad, gather, sort."""
    _check_side(side)
    mode = "symmetric" if border == BorderPolicy.REFLECT else "edge"
    pad = side // 2
    padded = np.pad(image.pixels, pad, mode=mode)
    h, w = image.height, image.width
    n = side * side
    mn = np.empty((h, w), dtype=np.uint8)
    md = np.empty((h, w), dtype=np.uint8)
    mx = np.empty((h, w), dtype=np.uint8)
    for y in range(h):
        for x in range(w):
            win = np.sort(padded[y : y + side, x : x + side], axis=None)
            mn[y, x] = win[0]
            md[y, x] = win[n // 2]
            mx[y, x] = win[-1]
    return WindowStatsGrid(mn, md, mx)


def median_filter(
    image: GrayImage,
    side: int = 3,
    border: BorderPolicy = BorderPolicy.REPLICATE,
    engine: str = "histogram",
) -> GrayImage:
    """Plain median filter. engine selects the histogram pass or the naive
    sort-every-window pass (same output, kept for cross-checking and timing).
    """
    if engine == "histogram":
        stats = sliding_stats_pass(image, side, border)
    elif engine == "naive":
        stats = naive_stats_pass(image, side, border)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return GrayImage(stats.s_med)


def weighted_median_filter(
    image: GrayImage,
    weights,
    border: BorderPolicy = BorderPolicy.REPLICATE,
) -> GrayImage:
    """Weighted median: each window sample is replicated by its weight and
    the exact median of the replicated multiset is taken.

    weights is a row-major square of positive integers whose length is an odd
    perfect square; the total weight must be odd so the median is a single
    sample.
    """
    wt = np.asarray(weights)
    if wt.ndim == 2:
        if wt.shape[0] != wt.shape[1]:
            raise ValueError(
                f"weight grid must be square, got shape {wt.shape}"
            )
        wt = wt.ravel()
    elif wt.ndim != 1:
        raise ValueError(f"weights must be 1-D or 2-D, got {wt.ndim}-D")
    if not np.issubdtype(wt.dtype, np.integer):
        raise ValueError(f"weights must be integers, got dtype {wt.dtype}")
    side = math.isqrt(wt.size)
    if side * side != wt.size:
        raise ValueError(
            f"weight count must be a perfect square, got {wt.size}"
        )
    _check_side(side)
    if np.any(wt <= 0):
        raise ValueError("weights must all be positive")
    total = int(wt.sum())
    if total % 2 == 0:
        raise ValueError(f"total weight must be odd, got {total}")
    reflect = border == BorderPolicy.REFLECT
    out = _kernels.weighted_median(
        image.pixels, wt.astype(np.int64), side, reflect
    )
    return GrayImage(out)


def cwm_filter(
    image: GrayImage,
    side: int = 3,
    center_weight: int = 3,
    border: BorderPolicy = BorderPolicy.REPLICATE,
) -> GrayImage:
    """Center-weighted median: weight center_weight at the window center,
    1 everywhere else. center_weight 1 reduces to the plain median;
    center_weight >= side*side makes the filter the identity.
    """
    _check_side(side)
    cw = center_weight
    if not isinstance(cw, (int, np.integer)) or isinstance(cw, bool):
        raise ValueError(f"center weight must be an integer, got {cw!r}")
    if cw < 1 or cw % 2 == 0:
        raise ValueError(f"center weight must be odd and >= 1, got {cw}")
    weights = np.ones(side * side, dtype=np.int64)
    weights[side * side // 2] = cw
    return weighted_median_filter(image, weights, border)


def amf_filter(
    image: GrayImage,
    w_init: int = 3,
    w_max: int = 7,
    border: BorderPolicy = BorderPolicy.REPLICATE,
    fallback: str = "median",
) -> GrayImage:
    """Adaptive median filter.

    Each pixel starts with a w_init window. While the window median is not
    strictly between the window min and max, the window grows by 2 up to
    w_max. Once the median separates (an impulse-free estimate), the center
    pixel is kept if it is itself strictly inside (min, max), otherwise the
    median is written. If w_max is exhausted, fallback picks the result:
    "median" writes the w_max-window median, "center" keeps the pixel.
    """
    _check_side(w_init)
    _check_side(w_max)
    if w_max < w_init:
        raise ValueError(
            f"w_max must be >= w_init, got w_init={w_init} w_max={w_max}"
        )
    if fallback not in ("median", "center"):
        raise ValueError(
            f'fallback must be "median" or "center", got {fallback!r}'
        )
    reflect = border == BorderPolicy.REFLECT
    out = _kernels.adaptive_median(
        image.pixels, w_init, w_max, reflect, fallback == "median"
    )
    return GrayImage(out)


@dataclass(frozen=True)
class FilterSpec:
    """One configured filter, as named on the command line and in sweeps."""

    kind: FilterKind
    side: int = 3
    center_weight: int = 3
    weights: Optional[tuple] = None
    w_init: int = 3
    w_max: int = 7
    fallback: str = "median"

    def __post_init__(self):
        if not isinstance(self.kind, FilterKind):
            raise ValueError(f"kind must be a FilterKind, got {self.kind!r}")
        if self.kind == FilterKind.WEIGHTED_MEDIAN and self.weights is None:
            raise ValueError("weighted median needs explicit weights")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))

    @property
    def label(self) -> str:
        """Short name used in sweep CSV rows and dump filenames."""
        k = self.kind
        if k == FilterKind.MEDIAN:
            return f"median{self.side}"
        if k == FilterKind.WEIGHTED_MEDIAN:
            return f"wm{self.side}"
        if k == FilterKind.CENTER_WEIGHTED_MEDIAN:
            return f"cwm{self.center_weight}"
        return f"amf{self.w_max}"


def apply_filter(
    image: GrayImage,
    spec: FilterSpec,
    border: BorderPolicy = BorderPolicy.REPLICATE,
) -> GrayImage:
    """Run the filter described by spec."""
    k = spec.kind
    if k == FilterKind.MEDIAN:
        return median_filter(image, spec.side, border)
    if k == FilterKind.WEIGHTED_MEDIAN:
        return weighted_median_filter(image, spec.weights, border)
    if k == FilterKind.CENTER_WEIGHTED_MEDIAN:
        return cwm_filter(image, spec.side, spec.center_weight, border)
    return amf_filter(image, spec.w_init, spec.w_max, border, spec.fallback)
