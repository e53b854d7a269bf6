"""Binary PGM (P5) reading and writing for 8- and 16-bit grayscale images.

16-bit files use the standard big-endian byte order.  Values above the
10-bit ceiling are rejected on read since the pipeline models a 10-bit
sensor.
"""

from __future__ import annotations

import numpy as np

from .errors import InputFormatError
from .images import MAX_INTENSITY, GrayImage


def _read_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    # Skip whitespace and '#' comments, then collect one token.
    n = len(buf)
    while pos < n:
        c = buf[pos : pos + 1]
        if c == b"#":
            while pos < n and buf[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not buf[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise InputFormatError("truncated PGM header")
    return buf[start:pos], pos


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as f:
        buf = f.read()
    magic, pos = _read_token(buf, 0)
    if magic != b"P5":
        raise InputFormatError(f"not a binary PGM (magic {magic!r}, expected b'P5')")
    fields = []
    for _ in range(3):
        tok, pos = _read_token(buf, pos)
        try:
            fields.append(int(tok))
        except ValueError:
            raise InputFormatError(f"bad PGM header token {tok!r}") from None
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise InputFormatError(f"bad PGM dimensions {width}x{height}")
    if not (0 < maxval < 65536):
        raise InputFormatError(f"bad PGM maxval {maxval}")
    pos += 1  # single whitespace byte after maxval
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    need = width * height * dtype.itemsize
    raster = buf[pos : pos + need]
    if len(raster) != need:
        raise InputFormatError(
            f"PGM raster truncated: expected {need} bytes, got {len(raster)}"
        )
    data = np.frombuffer(raster, dtype=dtype).reshape(height, width).astype(np.uint16)
    if int(data.max(initial=0)) > MAX_INTENSITY:
        raise InputFormatError(
            f"pixel value {int(data.max())} exceeds the 10-bit maximum {MAX_INTENSITY}"
        )
    return GrayImage(width=width, height=height, data=data)


def write_pgm(path, img: GrayImage) -> None:
    maxval = MAX_INTENSITY if int(img.data.max(initial=0)) > 255 else 255
    header = f"P5\n{img.width} {img.height}\n{maxval}\n".encode("ascii")
    if maxval > 255:
        raster = img.data.astype(">u2").tobytes()
    else:
        raster = img.data.astype("u1").tobytes()
    with open(path, "wb") as f:
        f.write(header + raster)
