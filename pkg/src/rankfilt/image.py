"""Grayscale image container, window extraction, and window order statistics."""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

import numpy as np


class BorderPolicy(Enum):
    """How window coordinates falling outside the image are resolved."""

    REPLICATE = "replicate"  # clamp to the nearest edge pixel
    REFLECT = "reflect"  # mirror about the image boundary


class GrayImage:
    """Immutable single-channel 8-bit image.

    Pixel data is exposed as a read-only ``(height, width)`` uint8 array in
    row-major order. All operations in this package treat instances as values:
    filters and injectors return new images and never mutate their inputs.
    """

    __slots__ = ("_pixels",)

    def __init__(self, pixels) -> None:
        arr = np.asarray(pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D pixel grid, got {arr.ndim} dimension(s)")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(
                f"invalid dimensions {arr.shape[1]}x{arr.shape[0]}: width and height must be >= 1"
            )
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"intensities must be integers, got dtype {arr.dtype}")
        if int(arr.min()) < 0 or int(arr.max()) > 255:
            raise ValueError("intensities must lie in [0, 255]")
        data = arr.astype(np.uint8)  # always copies
        data.flags.writeable = False
        self._pixels = data

    @property
    def pixels(self) -> np.ndarray:
        """Read-only (height, width) uint8 array."""
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self._pixels.shape == other._pixels.shape and bool(
            np.array_equal(self._pixels, other._pixels)
        )

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


def new_image(width: int, height: int, fill: int = 0) -> GrayImage:
    """Create a ``width x height`` image with every pixel set to ``fill``."""
    if width < 1 or height < 1:
        raise ValueError(f"invalid dimensions {width}x{height}: width and height must be >= 1")
    if not 0 <= fill <= 255:
        raise ValueError(f"fill value {fill} outside [0, 255]")
    return GrayImage(np.full((height, width), fill, dtype=np.uint8))


class Window:
    """A ``side x side`` pixel neighborhood, values stored in row-major order."""

    __slots__ = ("_values", "_side")

    def __init__(self, values, side: int) -> None:
        if side % 2 == 0 or side < 3:
            raise ValueError(f"window side must be odd and >= 3, got {side}")
        vals = np.asarray(values)
        if vals.ndim != 1 or vals.size != side * side:
            raise ValueError(f"expected {side * side} values for a {side}x{side} window")
        if not np.issubdtype(vals.dtype, np.integer):
            raise ValueError(f"window values must be integers, got dtype {vals.dtype}")
        if int(vals.min()) < 0 or int(vals.max()) > 255:
            raise ValueError("window values must lie in [0, 255]")
        data = vals.astype(np.uint8)
        data.flags.writeable = False
        self._values = data
        self._side = side

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def side(self) -> int:
        return self._side

    @property
    def center_value(self) -> int:
        """The pixel at the geometric center of the window."""
        return int(self._values[self._values.size // 2])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Window):
            return NotImplemented
        return self._side == other._side and bool(np.array_equal(self._values, other._values))

    def __repr__(self) -> str:
        return f"Window(side={self._side}, values={self._values.tolist()})"


class WindowStats(NamedTuple):
    """Minimum, exact median, and maximum of a window's value multiset."""

    s_min: int
    s_med: int
    s_max: int


def _map_coord(c: int, size: int, policy: BorderPolicy) -> int:
    """Resolve a possibly out-of-range coordinate against one image axis."""
    if 0 <= c < size:
        return c
    if policy is BorderPolicy.REPLICATE:
        return 0 if c < 0 else size - 1
    # Reflection about the image boundary: -1 -> 0, -2 -> 1, size -> size-1.
    # The modular fold keeps this well-defined even when the window is wider
    # than the image.
    period = 2 * size
    m = c % period
    if m >= size:
        m = period - 1 - m
    return m


def window_at(
    image: GrayImage,
    x: int,
    y: int,
    side: int,
    policy: BorderPolicy = BorderPolicy.REPLICATE,
) -> Window:
    """Extract the ``side x side`` neighborhood centered at column ``x``, row ``y``.

    Coordinates that fall outside the image are resolved by ``policy``:
    REPLICATE clamps to the nearest valid row/column, REFLECT mirrors about
    the image boundary. The center must itself be a valid pixel.
    """
    if side % 2 == 0 or side < 3:
        raise ValueError(f"window side must be odd and >= 3, got {side}")
    if not (0 <= x < image.width and 0 <= y < image.height):
        raise IndexError(f"center ({x}, {y}) outside {image.width}x{image.height} image")
    pad = side // 2
    rows = [_map_coord(y + dy, image.height, policy) for dy in range(-pad, pad + 1)]
    cols = [_map_coord(x + dx, image.width, policy) for dx in range(-pad, pad + 1)]
    values = image.pixels[np.ix_(rows, cols)].ravel()
    return Window(values, side)


def window_stats(window: Window) -> WindowStats:
    """Min, median, and max of the window; the median is the exact middle of
    the sorted value multiset, so it is always a value present in the window."""
    s = np.sort(window.values)
    return WindowStats(int(s[0]), int(s[s.size // 2]), int(s[-1]))
