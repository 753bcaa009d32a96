"""Restoration quality measures: MSE, PSNR, and the percentage of noisy
pixels a filter actually improved (PONA).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .image import GrayImage
from .noise import NoiseMask


def _check_same_shape(a: GrayImage, b: GrayImage, what: str):
    if a.width != b.width or a.height != b.height:
        raise ValueError(
            f"{what}: shapes differ, "
            f"{a.width}x{a.height} vs {b.width}x{b.height}"
        )


def mse(reference: GrayImage, test: GrayImage) -> float:
    """Mean squared error, accumulated in exact integers before the divide."""
    _check_same_shape(reference, test, "mse")
    diff = reference.pixels.astype(np.int64) - test.pixels.astype(np.int64)
    total = int(np.sum(diff * diff))
    return total / diff.size


def psnr(reference: GrayImage, test: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB against peak 255.

    Identical images have zero error; that is reported as math.inf rather
    than raising.
    """
    e = mse(reference, test)
    if e == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 * 255.0 / e)


def pona(
    original: GrayImage,
    noisy: GrayImage,
    denoised: GrayImage,
    mask: NoiseMask,
) -> Optional[float]:
    """Percentage of flagged pixels strictly closer to the original after
    filtering than before. None when the mask flags nothing (the measure is
    undefined, not zero).
    """
    _check_same_shape(original, noisy, "pona")
    _check_same_shape(original, denoised, "pona")
    flags = mask.flags
    if flags.shape != (original.height, original.width):
        raise ValueError(
            f"pona: mask shape {flags.shape} does not match image "
            f"{original.height}x{original.width}"
        )
    n = int(flags.sum())
    if n == 0:
        return None
    orig = original.pixels.astype(np.int64)
    err_before = np.abs(noisy.pixels.astype(np.int64) - orig)
    err_after = np.abs(denoised.pixels.astype(np.int64) - orig)
    improved = int(np.sum((err_after < err_before) & flags))
    return 100.0 * improved / n


@dataclass(frozen=True)
class MetricsReport:
    """Bundle of the three measures for one denoised image.

    pona_pct is None when no mask was supplied or the mask was empty.
    runtime_ms is optional bookkeeping for benchmark rows; it is not a
    quality measure.
    """

    mse: float
    psnr_db: float
    pona_pct: Optional[float] = None
    runtime_ms: Optional[float] = None


def evaluate(
    original: GrayImage,
    noisy: GrayImage,
    denoised: GrayImage,
    mask: Optional[NoiseMask] = None,
    runtime_ms: Optional[float] = None,
) -> MetricsReport:
    """All measures at once. mask enables pona; without it pona_pct is None."""
    _check_same_shape(original, noisy, "evaluate")
    p = None if mask is None else pona(original, noisy, denoised, mask)
    return MetricsReport(
        mse=mse(original, denoised),
        psnr_db=psnr(original, denoised),
        pona_pct=p,
        runtime_ms=runtime_ms,
    )
