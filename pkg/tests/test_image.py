import numpy as np
import pytest

from rankfilt import (
    BorderPolicy,
    GrayImage,
    Window,
    new_image,
    window_at,
    window_stats,
)

from conftest import random_image


def coord_image():
    # img[y, x] = 10*x + y, so every value names its own coordinates
    arr = np.fromfunction(lambda y, x: 10 * x + y, (5, 5), dtype=np.int64)
    return GrayImage(arr)


class TestGrayImage:
    def test_basic_properties(self):
        img = GrayImage([[1, 2, 3], [4, 5, 6]])
        assert img.width == 3
        assert img.height == 2
        assert img.pixels.dtype == np.uint8
        assert img.pixels[1, 2] == 6

    def test_pixels_are_read_only(self):
        img = new_image(4, 4, fill=9)
        with pytest.raises(ValueError):
            img.pixels[0, 0] = 1

    def test_source_array_is_copied(self):
        src = np.zeros((3, 3), dtype=np.uint8)
        img = GrayImage(src)
        src[0, 0] = 77
        assert img.pixels[0, 0] == 0

    def test_equality(self):
        a = GrayImage([[0, 1], [2, 3]])
        b = GrayImage([[0, 1], [2, 3]])
        c = GrayImage([[0, 1], [2, 4]])
        assert a == b
        assert a != c
        assert a != "not an image"

    def test_rejects_wrong_rank(self):
        with pytest.raises(ValueError, match="2-D"):
            GrayImage([1, 2, 3])
        with pytest.raises(ValueError):
            GrayImage(np.zeros((2, 2, 3), dtype=np.uint8))

    def test_rejects_floats(self):
        with pytest.raises(ValueError, match="integers"):
            GrayImage(np.zeros((2, 2), dtype=np.float64))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match=r"\[0, 255\]"):
            GrayImage(np.array([[0, 256]]))
        with pytest.raises(ValueError):
            GrayImage(np.array([[-1, 0]]))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            GrayImage(np.zeros((0, 4), dtype=np.uint8))


class TestNewImage:
    def test_fill(self):
        img = new_image(3, 2, fill=128)
        assert img.width == 3 and img.height == 2
        assert np.all(img.pixels == 128)

    def test_default_fill_is_black(self):
        assert np.all(new_image(2, 2).pixels == 0)

    def test_bad_dimensions(self):
        with pytest.raises(ValueError, match="dimensions"):
            new_image(0, 5)
        with pytest.raises(ValueError):
            new_image(5, -1)

    def test_bad_fill(self):
        with pytest.raises(ValueError, match="fill"):
            new_image(2, 2, fill=300)


class TestWindowAt:
    def test_interior_row_major(self):
        win = window_at(coord_image(), 2, 2, 3)
        assert win.values.tolist() == [11, 21, 31, 12, 22, 32, 13, 23, 33]
        assert win.center_value == 22
        assert win.side == 3

    def test_replicate_corner(self):
        win = window_at(coord_image(), 0, 0, 3)
        # rows/cols -1 clamp to 0
        assert win.values.tolist() == [0, 0, 10, 0, 0, 10, 1, 1, 11]

    def test_reflect_matches_replicate_at_offset_one(self):
        # half-sample reflection maps -1 to 0, same as clamping
        a = window_at(coord_image(), 0, 0, 3, BorderPolicy.REPLICATE)
        b = window_at(coord_image(), 0, 0, 3, BorderPolicy.REFLECT)
        assert a == b

    def test_reflect_differs_at_offset_two(self):
        img = coord_image()
        rep = window_at(img, 0, 0, 5, BorderPolicy.REPLICATE)
        ref = window_at(img, 0, 0, 5, BorderPolicy.REFLECT)
        # middle window row (dy = 0), column offsets -2..2:
        # replicate maps them to columns 0,0,0,1,2; reflect to 1,0,0,1,2
        assert rep.values[10:15].tolist() == [0, 0, 0, 10, 20]
        assert ref.values[10:15].tolist() == [10, 0, 0, 10, 20]

    def test_reflect_window_wider_than_image(self):
        img = GrayImage([[5, 9]])
        win = window_at(img, 0, 0, 5, BorderPolicy.REFLECT)
        assert set(win.values.tolist()) <= {5, 9}

    def test_even_side_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            window_at(coord_image(), 2, 2, 4)
        with pytest.raises(ValueError):
            window_at(coord_image(), 2, 2, 1)

    def test_center_out_of_bounds(self):
        with pytest.raises(IndexError):
            window_at(coord_image(), 5, 0, 3)
        with pytest.raises(IndexError):
            window_at(coord_image(), 0, -1, 3)


class TestWindowStats:
    def test_unsorted_values(self):
        win = Window([90, 10, 50, 30, 70, 20, 80, 40, 60], 3)
        s = window_stats(win)
        assert (s.s_min, s.s_med, s.s_max) == (10, 50, 90)

    def test_median_is_a_window_value(self):
        # 4 zeros and 5 times 255: the middle of 9 is 255, never an average
        win = Window([0, 0, 0, 0, 255, 255, 255, 255, 255], 3)
        assert window_stats(win).s_med == 255

    def test_constant_window(self):
        win = Window([7] * 25, 5)
        assert window_stats(win) == (7, 7, 7)

    def test_window_validation(self):
        with pytest.raises(ValueError):
            Window([1, 2, 3], 3)
        with pytest.raises(ValueError):
            Window([0] * 16, 4)


def test_stats_match_numpy_median_on_odd_windows(rng):
    for _ in range(200):
        vals = rng.integers(0, 256, size=9)
        s = window_stats(Window(vals, 3))
        assert s.s_med == int(np.median(vals))
        assert s.s_min == int(vals.min())
        assert s.s_max == int(vals.max())


def test_window_at_agrees_with_manual_gather(rng):
    img = random_image(rng, 12, 9)
    px = img.pixels
    for _ in range(50):
        x = int(rng.integers(0, 12))
        y = int(rng.integers(0, 9))
        win = window_at(img, x, y, 3)
        manual = [
            px[min(max(y + dy, 0), 8), min(max(x + dx, 0), 11)]
            for dy in (-1, 0, 1)
            for dx in (-1, 0, 1)
        ]
        assert win.values.tolist() == manual
