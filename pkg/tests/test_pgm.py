import numpy as np
import pytest

from ringpiv import GrayImage, InputFormatError
from ringpiv.pgm import read_pgm, write_pgm


def test_roundtrip_16bit(tmp_path):
    rng = np.random.default_rng(31)
    img = GrayImage.from_array(rng.integers(0, 1024, size=(40, 56)).astype(np.uint16))
    path = tmp_path / "a.pgm"
    write_pgm(path, img)
    back = read_pgm(path)
    np.testing.assert_array_equal(back.data, img.data)


def test_roundtrip_8bit(tmp_path):
    rng = np.random.default_rng(32)
    img = GrayImage.from_array(rng.integers(0, 256, size=(10, 12)).astype(np.uint16))
    path = tmp_path / "b.pgm"
    write_pgm(path, img)
    with open(path, "rb") as f:
        assert f.read(2) == b"P5"
    back = read_pgm(path)
    np.testing.assert_array_equal(back.data, img.data)


def test_reads_comments_in_header(tmp_path):
    path = tmp_path / "c.pgm"
    raster = bytes(range(6))
    path.write_bytes(b"P5\n# a comment\n3 2\n# another\n255\n" + raster)
    img = read_pgm(path)
    assert (img.width, img.height) == (3, 2)
    assert img.data[1, 2] == 5


def test_rejects_bad_magic(tmp_path):
    path = tmp_path / "d.pgm"
    path.write_bytes(b"P2\n2 2\n255\n0 0 0 0")
    with pytest.raises(InputFormatError, match="magic"):
        read_pgm(path)


def test_rejects_16bit_above_1023(tmp_path):
    path = tmp_path / "e.pgm"
    data = np.array([[1024]], dtype=">u2")
    path.write_bytes(b"P5\n1 1\n65535\n" + data.tobytes())
    with pytest.raises(InputFormatError, match="1023"):
        read_pgm(path)


def test_rejects_truncated_raster(tmp_path):
    path = tmp_path / "f.pgm"
    path.write_bytes(b"P5\n4 4\n255\n\x00\x00")
    with pytest.raises(InputFormatError, match="truncated"):
        read_pgm(path)
