"""Seeded noise injection: impulse (salt-pepper, fixed, random-valued) and
additive Gaussian.

Reproducibility contract: all randomness comes from SplitMix64 seeded per
call, pixels are visited row-major, and each pixel consumes a fixed number of
draws (impulse: one, plus one more when corrupted; Gaussian: two). The same
(image, spec) pair therefore yields the same output on any platform.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .image import GrayImage

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Tiny deterministic PRNG, mirrored bit-for-bit by the compiled kernels."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform in [0, 1) up to float rounding at the top end."""
        return self.next_u64() * 2.0**-64


class NoiseKind(Enum):
    SALT_PEPPER = "salt-pepper"
    FIXED_IMPULSE = "fixed-impulse"
    RANDOM_IMPULSE = "random-impulse"
    GAUSSIAN = "gaussian"


_IMPULSE_KINDS = (
    NoiseKind.SALT_PEPPER,
    NoiseKind.FIXED_IMPULSE,
    NoiseKind.RANDOM_IMPULSE,
)


@dataclass(frozen=True)
class NoiseSpec:
    """Parameters of one injection.

    density is the per-pixel corruption probability for impulse kinds and is
    ignored for Gaussian noise (every pixel is perturbed). low/high bound the
    impulse values; sigma is the Gaussian standard deviation.
    """

    kind: NoiseKind
    density: float = 0.0
    low: int = 0
    high: int = 255
    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.kind, NoiseKind):
            raise ValueError(f"kind must be a NoiseKind, got {self.kind!r}")
        if self.kind in _IMPULSE_KINDS:
            if not 0.0 <= self.density <= 1.0:
                raise ValueError(
                    f"density must lie in [0, 1], got {self.density}"
                )
            for name, v in (("low", self.low), ("high", self.high)):
                if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                    raise ValueError(f"{name} must be an integer, got {v!r}")
                if not 0 <= v <= 255:
                    raise ValueError(f"{name} must lie in [0, 255], got {v}")
            if self.low >= self.high:
                raise ValueError(
                    f"low must be less than high, got low={self.low} "
                    f"high={self.high}"
                )
        else:
            if self.sigma < 0.0:
                raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not isinstance(self.seed, (int, np.integer)) or isinstance(
            self.seed, bool
        ):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


class NoiseMask:
    """Boolean per-pixel record of which pixels the injector touched.

    For impulse noise a pixel is flagged when it was selected for corruption,
    even if the drawn value happens to equal the original. For Gaussian noise
    a pixel is flagged when its stored value actually changed.
    """

    __slots__ = ("_flags",)

    def __init__(self, flags):
        arr = np.asarray(flags)
        if arr.ndim != 2:
            raise ValueError(f"mask must be 2-D, got shape {arr.shape}")
        if arr.dtype != np.bool_:
            raise ValueError(f"mask must be boolean, got dtype {arr.dtype}")
        arr = arr.copy()
        arr.flags.writeable = False
        self._flags = arr

    @property
    def flags(self) -> np.ndarray:
        return self._flags

    @property
    def count(self) -> int:
        return int(self._flags.sum())

    def __eq__(self, other):
        if not isinstance(other, NoiseMask):
            return NotImplemented
        return np.array_equal(self._flags, other._flags)

    def __repr__(self):
        h, w = self._flags.shape
        return f"NoiseMask({w}x{h}, {self.count} set)"


def inject(image: GrayImage, spec: NoiseSpec) -> tuple[GrayImage, NoiseMask]:
    """Apply spec to image, returning the noisy image and the touch mask."""
    seed = np.uint64(spec.seed & _MASK64)
    if spec.kind == NoiseKind.GAUSSIAN:
        out, mask = _kernels.inject_gaussian(
            image.pixels, float(spec.sigma), seed
        )
    else:
        random_valued = spec.kind == NoiseKind.RANDOM_IMPULSE
        out, mask = _kernels.inject_impulse(
            image.pixels,
            float(spec.density),
            np.int64(spec.low),
            np.int64(spec.high),
            random_valued,
            seed,
        )
    return GrayImage(out), NoiseMask(mask)
