import numpy as np
import pytest

from rankfilt import (
    CorruptFileError,
    GrayImage,
    PgmError,
    PgmVariant,
    UnsupportedDepthError,
    UnsupportedFormatError,
    load_pgm,
    read_pgm,
    save_pgm,
    write_pgm,
)

from conftest import random_image


class TestReadAscii:
    def test_basic(self):
        img, variant = read_pgm(b"P2\n2 2\n255\n0 64 128 255")
        assert variant == PgmVariant.ASCII
        assert img.pixels.tolist() == [[0, 64], [128, 255]]

    def test_any_whitespace_between_samples(self):
        img, _ = read_pgm(b"P2 2 2 255\n0\t64\r\n128     255\n")
        assert img.pixels.tolist() == [[0, 64], [128, 255]]

    def test_comments_anywhere_in_header(self):
        data = (b"P2 # magic\n# a comment line\n2 # width\n2\n"
                b"# before maxval\n255\n0 64 128 255")
        img, _ = read_pgm(data)
        assert img.pixels.tolist() == [[0, 64], [128, 255]]

    def test_sample_above_maxval(self):
        with pytest.raises(CorruptFileError, match="exceeds"):
            read_pgm(b"P2\n1 1\n100\n101")

    def test_small_maxval_accepted(self):
        img, _ = read_pgm(b"P2\n2 1\n15\n0 15")
        assert img.pixels.tolist() == [[0, 15]]

    def test_missing_samples(self):
        with pytest.raises(CorruptFileError):
            read_pgm(b"P2\n2 2\n255\n0 64 128")

    def test_trailing_junk(self):
        with pytest.raises(CorruptFileError, match="trailing"):
            read_pgm(b"P2\n1 1\n255\n0 junk")

    def test_trailing_whitespace_ok(self):
        img, _ = read_pgm(b"P2\n1 1\n255\n0\n\n  \n")
        assert img.pixels.tolist() == [[0]]

    def test_non_numeric_token(self):
        with pytest.raises(CorruptFileError, match="width"):
            read_pgm(b"P2\nabc 2\n255\n0 0")


class TestReadBinary:
    def test_basic(self):
        img, variant = read_pgm(b"P5\n2 1\n255\n\x00\xff")
        assert variant == PgmVariant.BINARY
        assert img.pixels.tolist() == [[0, 255]]

    def test_single_whitespace_then_raster(self):
        # the octet right after the separator belongs to the raster even if
        # it looks like whitespace
        img, _ = read_pgm(b"P5\n2 1\n255\n\x0a\x20")
        assert img.pixels.tolist() == [[10, 32]]

    def test_truncated_raster(self):
        with pytest.raises(CorruptFileError, match="short"):
            read_pgm(b"P5\n2 2\n255\n\x00\x01\x02")

    def test_missing_separator(self):
        with pytest.raises(CorruptFileError):
            read_pgm(b"P5\n2 1\n255")

    def test_trailing_bytes_rejected(self):
        with pytest.raises(CorruptFileError, match="trailing"):
            read_pgm(b"P5\n1 1\n255\n\x00\x01")

    def test_trailing_newline_tolerated(self):
        img, _ = read_pgm(b"P5\n1 1\n255\n\x42\n")
        assert img.pixels.tolist() == [[0x42]]

    def test_sample_above_small_maxval(self):
        with pytest.raises(CorruptFileError, match="exceeds"):
            read_pgm(b"P5\n1 1\n100\n\xc8")


class TestHeaderErrors:
    def test_color_magic_rejected(self):
        with pytest.raises(UnsupportedFormatError):
            read_pgm(b"P3\n1 1\n255\n0 0 0")

    def test_unknown_magic(self):
        with pytest.raises(UnsupportedFormatError):
            read_pgm(b"Q5\n1 1\n255\n\x00")

    def test_sixteen_bit_depth_rejected(self):
        with pytest.raises(UnsupportedDepthError):
            read_pgm(b"P5\n1 1\n65535\n\x00\x00")

    def test_zero_maxval(self):
        with pytest.raises(CorruptFileError):
            read_pgm(b"P2\n1 1\n0\n0")

    def test_zero_dimensions(self):
        with pytest.raises(CorruptFileError, match="dimensions"):
            read_pgm(b"P2\n0 1\n255\n")

    def test_empty_input(self):
        with pytest.raises(CorruptFileError):
            read_pgm(b"")

    def test_errors_share_a_base(self):
        for exc in (UnsupportedFormatError, UnsupportedDepthError,
                    CorruptFileError):
            assert issubclass(exc, PgmError)


class TestWrite:
    def test_binary_golden(self):
        img = GrayImage([[42]])
        assert write_pgm(img, PgmVariant.BINARY) == b"P5\n1 1\n255\n\x2a"

    def test_ascii_golden(self):
        img = GrayImage([[0, 64], [128, 255]])
        assert write_pgm(img, PgmVariant.ASCII) == (
            b"P2\n2 2\n255\n0 64\n128 255\n"
        )

    def test_default_variant_is_binary(self):
        img = GrayImage([[1]])
        assert write_pgm(img).startswith(b"P5")

    def test_canonical(self, rng):
        # equal images, separately constructed, serialize identically
        a = random_image(rng, 9, 5)
        b = GrayImage(a.pixels.copy())
        for variant in PgmVariant:
            assert write_pgm(a, variant) == write_pgm(b, variant)


class TestRoundTrip:
    def test_both_variants(self, rng):
        for _ in range(25):
            w = int(rng.integers(1, 20))
            h = int(rng.integers(1, 20))
            img = random_image(rng, w, h)
            for variant in PgmVariant:
                back, seen = read_pgm(write_pgm(img, variant))
                assert back == img
                assert seen == variant

    def test_cross_variant_equality(self, rng):
        img = random_image(rng, 13, 8)
        via_p5, _ = read_pgm(write_pgm(img, PgmVariant.BINARY))
        via_p2, _ = read_pgm(write_pgm(img, PgmVariant.ASCII))
        assert via_p5 == via_p2

    def test_file_paths(self, rng, tmp_path):
        img = random_image(rng, 7, 11)
        p = tmp_path / "out.pgm"
        save_pgm(p, img)
        assert load_pgm(p) == img

    def test_one_by_one(self):
        img = GrayImage([[200]])
        for variant in PgmVariant:
            back, _ = read_pgm(write_pgm(img, variant))
            assert back == img
