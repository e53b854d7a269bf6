"""Window tiling, binarization, direct cross-correlation, and full-field PIV.

Coordinate conventions
----------------------
A correlation plane is indexed (iy, ix) by the pattern placement top-left
inside the search window; only fully-overlapping placements are evaluated,
so a W-pixel window and P-pixel pattern give (W - P + 1) placements per
axis.  The plane carries ``shift_offset`` = the placement that corresponds
to zero displacement (the centered position).  A placement (iy, ix) maps to

    dx = shift_offset_x - ix
    dy = shift_offset_y - iy

so that (dx, dy) is the motion of particles from frame 1 to frame 2 in
raster coordinates (positive dx rightward, positive dy downward).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ConfigError, DimensionError
from .images import BinaryImage, GrayImage

_WORD = np.uint64


@dataclass(frozen=True)
class WindowGrid:
    """Non-overlapping tiling of an image into square interrogation windows."""

    window_size: int
    cols: int
    rows: int

    @property
    def count(self) -> int:
        return self.cols * self.rows

    @property
    def origins(self) -> list[tuple[int, int]]:
        """Top-left corner (x0, y0) of each window, row-major."""
        ws = self.window_size
        return [(wx * ws, wy * ws) for wy in range(self.rows) for wx in range(self.cols)]

    def origin(self, index: int) -> tuple[int, int]:
        wy, wx = divmod(index, self.cols)
        return wx * self.window_size, wy * self.window_size

    def center(self, index: int) -> tuple[float, float]:
        x0, y0 = self.origin(index)
        half = self.window_size / 2.0
        return x0 + half, y0 + half


def tile_windows(width: int, height: int, window_size: int) -> WindowGrid:
    """Tile a width x height image into disjoint square windows."""
    if window_size <= 0:
        raise ConfigError(f"window_size must be positive, got {window_size}")
    if width % window_size:
        raise DimensionError(f"width {width} is not divisible by window size {window_size}")
    if height % window_size:
        raise DimensionError(f"height {height} is not divisible by window size {window_size}")
    return WindowGrid(window_size=window_size, cols=width // window_size, rows=height // window_size)


@dataclass(frozen=True)
class PivConfig:
    """Parameters of the correlation pipeline.

    ``binarization`` is either "adaptive" (per-window mean threshold) or
    "global" (one fixed threshold for the whole image, ``threshold``
    required).  ``tie_break`` names the rule used for equal correlation
    peaks; only "center-nearest" (smallest dx^2+dy^2, then row-major) is
    defined.
    """

    window_size: int = 32
    pattern_size: int = 16
    binarization: str = "adaptive"
    threshold: int | None = None
    tie_break: str = "center-nearest"

    def __post_init__(self):
        if self.window_size <= 0 or self.pattern_size <= 0:
            raise ConfigError("window_size and pattern_size must be positive")
        if self.pattern_size > self.window_size:
            raise ConfigError(
                f"pattern_size {self.pattern_size} exceeds window_size {self.window_size}"
            )
        if self.window_size > 64:
            raise ConfigError("window_size above 64 is not supported by the packed correlator")
        if self.binarization not in ("adaptive", "global"):
            raise ConfigError(f"unknown binarization mode {self.binarization!r}")
        if self.binarization == "global":
            if self.threshold is None:
                raise ConfigError("global binarization requires a threshold")
            if not (0 <= self.threshold <= 1023):
                raise ConfigError(f"threshold {self.threshold} outside 0..1023")
        if self.tie_break != "center-nearest":
            raise ConfigError(f"unknown tie-break rule {self.tie_break!r}")

    @property
    def search_range(self) -> int:
        """Tested placements per axis."""
        return self.window_size - self.pattern_size + 1


@dataclass(frozen=True)
class CorrelationPlane:
    """Correlation sums over all fully-overlapping pattern placements."""

    values: np.ndarray  # shape (shifts_y, shifts_x), int64
    shift_offset: tuple[int, int]  # (x, y) placement equal to zero displacement

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.size == 0:
            raise DimensionError(f"correlation plane must be a non-empty 2-D array, got {self.values.shape}")
        self.values.setflags(write=False)

    @property
    def shifts_x(self) -> int:
        return self.values.shape[1]

    @property
    def shifts_y(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class Displacement:
    dx: int
    dy: int
    peak_value: int
    window_index: int = 0


@dataclass(frozen=True)
class VectorField:
    grid: WindowGrid
    vectors: list[Displacement] = field(default_factory=list)

    def __post_init__(self):
        if len(self.vectors) != self.grid.count:
            raise DimensionError(
                f"{len(self.vectors)} vectors for {self.grid.count} windows"
            )


def binarize_global(img: GrayImage, threshold: int) -> BinaryImage:
    """Set bit = 1 where pixel >= threshold."""
    return BinaryImage.from_bool(img.data >= threshold)


def _window_sums(data: np.ndarray, ws: int) -> np.ndarray:
    h, w = data.shape
    return (
        data.astype(np.int64)
        .reshape(h // ws, ws, w // ws, ws)
        .sum(axis=(1, 3))
    )


def adaptive_thresholds(img: GrayImage, grid: WindowGrid) -> np.ndarray:
    """Per-window mean intensity, rounded half up."""
    ws = grid.window_size
    if grid.cols * ws != img.width or grid.rows * ws != img.height:
        raise DimensionError(
            f"grid {grid.cols}x{grid.rows} of {ws}px windows does not tile {img.width}x{img.height}"
        )
    sums = _window_sums(img.data, ws)
    area = ws * ws
    return (2 * sums + area) // (2 * area)


def binarize_adaptive(img: GrayImage, grid: WindowGrid) -> BinaryImage:
    """Binarize with one mean-based threshold per interrogation window."""
    ws = grid.window_size
    thr = adaptive_thresholds(img, grid)
    thr_full = np.repeat(np.repeat(thr, ws, axis=0), ws, axis=1)
    return BinaryImage.from_bool(img.data >= thr_full)


def pattern_offset(window_size: int, pattern_size: int) -> int:
    """Top-left offset of the centered pattern inside its window."""
    return (window_size - pattern_size) // 2


def extract_pattern(window: BinaryImage, pattern_size: int) -> BinaryImage:
    """Centered pattern_size x pattern_size sub-block of a binary window."""
    if window.width != window.height:
        raise ConfigError(f"window must be square, got {window.width}x{window.height}")
    if pattern_size > window.width:
        raise ConfigError(
            f"pattern size {pattern_size} exceeds window size {window.width}"
        )
    off = pattern_offset(window.width, pattern_size)
    return window.window(off, off, pattern_size)


def _centered_offset(w: int, p: int) -> tuple[int, int]:
    off = pattern_offset(w, p)
    return (off, off)


def xcorr_gray(search: GrayImage, pattern: GrayImage) -> CorrelationPlane:
    """Direct grayscale cross-correlation (sum of products) at all placements."""
    if search.width != search.height or pattern.width != pattern.height:
        raise ConfigError("search and pattern regions must be square")
    if pattern.width > search.width:
        raise ConfigError(
            f"pattern {pattern.width} larger than search window {search.width}"
        )
    p = pattern.width
    views = sliding_window_view(search.data.astype(np.int64), (p, p))
    values = np.einsum("ijkl,kl->ij", views, pattern.data.astype(np.int64))
    return CorrelationPlane(values=values, shift_offset=_centered_offset(search.width, p))


def _packed_xcorr(search_rows: np.ndarray, pattern_rows: np.ndarray, w: int, p: int) -> np.ndarray:
    """XNOR match counts for one window; rows are uint64 bit packs."""
    planes = _packed_xcorr_batch(search_rows[None, :], pattern_rows[None, :], w, p)
    return planes[0]


def _packed_xcorr_batch(
    search_rows: np.ndarray, pattern_rows: np.ndarray, w: int, p: int
) -> np.ndarray:
    """XNOR match counts for a batch of windows.

    search_rows: (n, w) uint64, pattern_rows: (n, p) uint64.  Returns
    (n, s, s) int64 planes with s = w - p + 1, indexed (iy, ix).
    """
    s = w - p + 1
    mask = _WORD((1 << p) - 1)
    shifts = np.arange(s, dtype=_WORD)
    # (n, s_ix, w): every horizontal placement of every search row
    sliced = (search_rows[:, None, :] >> shifts[None, :, None]) & mask
    # (n, s_ix, s_iy, p): vertical groupings of p consecutive rows
    grouped = sliding_window_view(sliced, p, axis=2)
    diff = np.bitwise_count(grouped ^ pattern_rows[:, None, None, :]).sum(
        axis=-1, dtype=np.int64
    )
    matches = p * p - diff
    return matches.transpose(0, 2, 1)  # -> (n, iy, ix)


def xcorr_binary(search: BinaryImage, pattern: BinaryImage) -> CorrelationPlane:
    """Binary cross-correlation: per-placement count of matching bits (XNOR sum).

    Implemented with word-packed rows, XOR, and population counts; equal to
    the per-bit definition exactly.
    """
    if search.width != search.height or pattern.width != pattern.height:
        raise ConfigError("search and pattern regions must be square")
    if pattern.width > search.width:
        raise ConfigError(
            f"pattern {pattern.width} larger than search window {search.width}"
        )
    values = _packed_xcorr(
        search.packed_rows(), pattern.packed_rows(), search.width, pattern.width
    )
    return CorrelationPlane(
        values=values, shift_offset=_centered_offset(search.width, pattern.width)
    )


def peak_displacement(plane: CorrelationPlane, window_index: int = 0) -> Displacement:
    """Displacement of the correlation maximum.

    Equal peaks are resolved by smallest dx^2 + dy^2, then row-major plane
    order, so a constant plane yields (0, 0) whenever zero displacement is
    inside the tested range.
    """
    values = plane.values
    peak = int(values.max())
    ties_y, ties_x = np.nonzero(values == peak)
    off_x, off_y = plane.shift_offset
    dx = off_x - ties_x
    dy = off_y - ties_y
    order = np.lexsort((ties_x, ties_y, dx * dx + dy * dy))
    best = order[0]
    return Displacement(
        dx=int(dx[best]), dy=int(dy[best]), peak_value=peak, window_index=window_index
    )


def _pack_window_rows(windows_bool: np.ndarray) -> np.ndarray:
    """(n, h, w) bool -> (n, h) uint64 row packs, bit x = column x."""
    w = windows_bool.shape[2]
    weights = _WORD(1) << np.arange(w, dtype=_WORD)
    return (windows_bool.astype(_WORD) * weights).sum(axis=2, dtype=_WORD)


def _split_windows(bits: np.ndarray, grid: WindowGrid) -> np.ndarray:
    """(H, W) bool -> (count, ws, ws) bool in row-major window order."""
    ws = grid.window_size
    return (
        bits.reshape(grid.rows, ws, grid.cols, ws)
        .transpose(0, 2, 1, 3)
        .reshape(grid.count, ws, ws)
    )


def binarize_frame(img: GrayImage, grid: WindowGrid, cfg: PivConfig) -> BinaryImage:
    if cfg.binarization == "global":
        return binarize_global(img, cfg.threshold)
    return binarize_adaptive(img, grid)


def compute_field(frame1: GrayImage, frame2: GrayImage, cfg: PivConfig) -> VectorField:
    """Full-field PIV: one displacement per interrogation window.

    Both frames are binarized per the config; the centered pattern of each
    frame-2 window is correlated (XNOR sum) against the matching frame-1
    window.  Deterministic; windows are independent.
    """
    if (frame1.width, frame1.height) != (frame2.width, frame2.height):
        raise DimensionError(
            f"frame sizes differ: {frame1.width}x{frame1.height} vs {frame2.width}x{frame2.height}"
        )
    grid = tile_windows(frame1.width, frame1.height, cfg.window_size)
    bits1 = binarize_frame(frame1, grid, cfg).to_bool()
    bits2 = binarize_frame(frame2, grid, cfg).to_bool()

    w, p = cfg.window_size, cfg.pattern_size
    off = pattern_offset(w, p)
    search_wins = _split_windows(bits1, grid)
    pattern_wins = _split_windows(bits2, grid)[:, off : off + p, off : off + p]

    planes = _packed_xcorr_batch(
        _pack_window_rows(search_wins), _pack_window_rows(pattern_wins), w, p
    )
    offset = _centered_offset(w, p)
    vectors = [
        peak_displacement(CorrelationPlane(values=planes[i], shift_offset=offset), i)
        for i in range(grid.count)
    ]
    return VectorField(grid=grid, vectors=vectors)
