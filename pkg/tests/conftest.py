import numpy as np
import pytest

from rankfilt import GrayImage


def random_image(rng, width, height):
    """Uniform random grayscale test image."""
    return GrayImage(
        rng.integers(0, 256, size=(height, width), dtype=np.uint8)
    )


def ramp_image(width, height):
    """img[y, x] = x + y, clipped to 255. Strictly varied in every window."""
    ys = np.arange(height)[:, None]
    xs = np.arange(width)[None, :]
    return GrayImage(np.minimum(ys + xs, 255).astype(np.uint8))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
