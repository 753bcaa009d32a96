"""PGM reader/writer for 8-bit grayscale, binary (P5) and ASCII (P2).

Reading is tolerant: comments anywhere in the header, any whitespace runs
between tokens, and for P2 between samples. Writing is canonical so that a
read/write round trip of a canonical file is byte-identical:

    P5  ->  b"P5\\n<width> <height>\\n<maxval>\\n" + rows of raw octets
    P2  ->  "P2\\n<width> <height>\\n<maxval>\\n" then one image row per line,
            samples separated by single spaces, newline after every row.
"""

from enum import Enum

import numpy as np

from .image import GrayImage


class PgmError(Exception):
    """Base for every PGM parsing and format failure."""


class UnsupportedFormatError(PgmError):
    """Magic number is not P5 or P2."""


class UnsupportedDepthError(PgmError):
    """Maxval is outside 1..255 (16-bit samples are not handled)."""


class CorruptFileError(PgmError):
    """Structurally broken file: bad tokens, short data, trailing garbage."""


class PgmVariant(Enum):
    BINARY = "P5"
    ASCII = "P2"


_WHITESPACE = b" \t\n\r\x0b\x0c"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next header token starting at pos, skipping whitespace and # comments.

    Returns (token, position just past it). Raises CorruptFileError when the
    data ends first.
    """
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c in (
            b" ",
            b"\t",
            b"\n",
            b"\r",
            b"\x0b",
            b"\x0c",
        ):
            pos += 1
        else:
            break
    if pos >= n:
        raise CorruptFileError("unexpected end of file in header")
    start = pos
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#" or c in (b" ", b"\t", b"\n", b"\r", b"\x0b", b"\x0c"):
            break
        pos += 1
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int]:
    tok, pos = _next_token(data, pos)
    if not tok.isdigit():
        raise CorruptFileError(f"bad {what} token {tok!r}")
    return int(tok), pos


def read_pgm(data: bytes) -> tuple[GrayImage, PgmVariant]:
    """Parse PGM bytes into an image, reporting which variant it was."""
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise CorruptFileError(
            f"expected bytes, got {type(data).__name__}"
        )
    data = bytes(data)
    magic, pos = _next_token(data, 0)
    if magic == b"P5":
        variant = PgmVariant.BINARY
    elif magic == b"P2":
        variant = PgmVariant.ASCII
    else:
        raise UnsupportedFormatError(f"unsupported magic {magic!r}")
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width < 1 or height < 1:
        raise CorruptFileError(f"bad dimensions {width}x{height}")
    if maxval > 255:
        raise UnsupportedDepthError(f"maxval {maxval} exceeds 255")
    if maxval < 1:
        raise CorruptFileError(f"bad maxval {maxval}")
    count = width * height
    if variant == PgmVariant.BINARY:
        # Exactly one whitespace octet terminates the header; the raster
        # starts immediately after it.
        if pos >= len(data) or data[pos : pos + 1] not in (
            b" ",
            b"\t",
            b"\n",
            b"\r",
            b"\x0b",
            b"\x0c",
        ):
            raise CorruptFileError("missing whitespace after maxval")
        pos += 1
        raster = data[pos : pos + count]
        if len(raster) < count:
            raise CorruptFileError(
                f"raster too short: need {count} octets, have {len(raster)}"
            )
        if data[pos + count :].strip(_WHITESPACE):
            raise CorruptFileError("trailing bytes after raster")
        arr = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    else:
        samples = np.empty(count, dtype=np.uint8)
        for i in range(count):
            v, pos = _int_token(data, pos, "sample")
            if v > maxval:
                raise CorruptFileError(
                    f"sample {v} exceeds maxval {maxval}"
                )
            samples[i] = v
        rest = data[pos:]
        if rest.strip(_WHITESPACE):
            raise CorruptFileError("trailing bytes after samples")
        arr = samples.reshape(height, width)
    if maxval != 255 and np.any(arr > maxval):
        raise CorruptFileError(f"sample exceeds maxval {maxval}")
    return GrayImage(arr), variant


def write_pgm(
    image: GrayImage, variant: PgmVariant = PgmVariant.BINARY
) -> bytes:
    """Serialize the image in canonical form with maxval 255."""
    header = f"{variant.value}\n{image.width} {image.height}\n255\n"
    if variant == PgmVariant.BINARY:
        return header.encode("ascii") + image.pixels.tobytes()
    lines = [
        " ".join(str(v) for v in row) + "\n" for row in image.pixels.tolist()
    ]
    return header.encode("ascii") + "".join(lines).encode("ascii")


def load_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        data = fh.read()
    image, _ = read_pgm(data)
    return image


def save_pgm(
    path, image: GrayImage, variant: PgmVariant = PgmVariant.BINARY
) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(image, variant))
