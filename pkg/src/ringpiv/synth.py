"""Synthetic particle image pairs with known flow fields.

Particles are rendered as hard-edged discs: the downstream binarization
discards intensity profiles, so the simplest renderer suffices.  All
randomness goes through numpy's PCG64 generator seeded explicitly, so a
given (seed, flow, config) triple always produces bit-identical frames.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .images import MAX_INTENSITY, GrayImage

_NOISE_SEED_SALT = 0x5EED_0F_0123


@dataclass(frozen=True)
class FlowSpec:
    """Displacement field applied between the two exposures.

    kinds:
      uniform  - every particle moves by (dx, dy) pixels
      shear    - dx = rate * y, dy = 0
      vortex   - solid-body rotation about ``center`` by angle ``strength``
                 (radians); small angles approximate the usual tangential flow
    ``delta_t`` is metadata only: displacements are already in pixels.
    """

    kind: str
    dx: float = 0.0
    dy: float = 0.0
    rate: float = 0.0
    center: tuple[float, float] = (0.0, 0.0)
    strength: float = 0.0
    delta_t: float = 1.0

    def __post_init__(self):
        if self.kind not in ("uniform", "shear", "vortex"):
            raise ConfigError(f"unknown flow kind {self.kind!r}")

    @classmethod
    def uniform(cls, dx: float, dy: float, delta_t: float = 1.0) -> "FlowSpec":
        return cls(kind="uniform", dx=dx, dy=dy, delta_t=delta_t)

    @classmethod
    def shear(cls, rate: float, delta_t: float = 1.0) -> "FlowSpec":
        return cls(kind="shear", rate=rate, delta_t=delta_t)

    @classmethod
    def vortex(cls, center: tuple[float, float], strength: float, delta_t: float = 1.0) -> "FlowSpec":
        return cls(kind="vortex", center=center, strength=strength, delta_t=delta_t)

    def displacement_at(self, x, y) -> tuple[np.ndarray, np.ndarray]:
        """Displacement (ux, uy) at positions (x, y)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.kind == "uniform":
            return np.full_like(x, self.dx), np.full_like(y, self.dy)
        if self.kind == "shear":
            return self.rate * y, np.zeros_like(y)
        cx, cy = self.center
        rx, ry = x - cx, y - cy
        c, s = np.cos(self.strength), np.sin(self.strength)
        return (c * rx - s * ry) - rx, (s * rx + c * ry) - ry


@dataclass(frozen=True)
class ParticleField:
    positions: np.ndarray  # shape (n, 2) float64, columns (x, y)
    radius: float
    seed: int

    def __post_init__(self):
        self.positions.setflags(write=False)

    @property
    def count(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class RenderConfig:
    width: int = 320
    height: int = 256
    background: int = 100
    particle_intensity: int = 900
    noise_amplitude: int = 0

    def __post_init__(self):
        if not (0 <= self.background <= MAX_INTENSITY):
            raise ConfigError(f"background {self.background} outside 0..{MAX_INTENSITY}")
        if not (0 <= self.particle_intensity <= MAX_INTENSITY):
            raise ConfigError(
                f"particle intensity {self.particle_intensity} outside 0..{MAX_INTENSITY}"
            )
        if self.noise_amplitude < 0:
            raise ConfigError("noise amplitude must be >= 0")


def seed_particles(
    width: int, height: int, density: float, seed: int, radius: float = 3.0
) -> ParticleField:
    """Uniformly placed particles; expected count = density * (area / 32^2).

    ``density`` is particles per 32x32 interrogation window.  The actual
    count is Poisson-distributed around the expectation, matching a uniform
    seeding process.
    """
    if density <= 0:
        raise ConfigError(f"density must be positive, got {density}")
    rng = np.random.default_rng(seed)
    expected = density * (width * height) / 1024.0
    n = int(rng.poisson(expected))
    xs = rng.uniform(0.0, width, size=n)
    ys = rng.uniform(0.0, height, size=n)
    return ParticleField(positions=np.column_stack([xs, ys]), radius=radius, seed=seed)


def advect(field: ParticleField, flow: FlowSpec) -> ParticleField:
    """Move each particle by the flow displacement at its position.

    Particles leaving the frame are kept; they simply render partially or
    not at all.
    """
    if field.count == 0:
        return field
    x, y = field.positions[:, 0], field.positions[:, 1]
    ux, uy = flow.displacement_at(x, y)
    moved = np.column_stack([x + ux, y + uy])
    return ParticleField(positions=moved, radius=field.radius, seed=field.seed)


def render(field: ParticleField, cfg: RenderConfig) -> np.ndarray:
    """Paint discs over the background; returns an int array (no noise)."""
    img = np.full((cfg.height, cfg.width), cfg.background, dtype=np.int32)
    if field.count == 0:
        return img
    r = field.radius
    span = int(np.ceil(r))
    offs = np.arange(-span, span + 1)
    oy, ox = np.meshgrid(offs, offs, indexing="ij")
    cx = field.positions[:, 0]
    cy = field.positions[:, 1]
    # Nearest pixel of each center, then a (2*span+1)^2 patch around it.
    px = np.rint(cx).astype(np.int64)[:, None, None] + ox[None, :, :]
    py = np.rint(cy).astype(np.int64)[:, None, None] + oy[None, :, :]
    inside = (px - cx[:, None, None]) ** 2 + (py - cy[:, None, None]) ** 2 <= r * r
    inside &= (px >= 0) & (px < cfg.width) & (py >= 0) & (py < cfg.height)
    img[py[inside], px[inside]] = cfg.particle_intensity
    return img


def render_pair(
    field: ParticleField, flow: FlowSpec, cfg: RenderConfig
) -> tuple[GrayImage, GrayImage]:
    """Frame 1 renders the field; frame 2 renders the advected field."""
    first = render(field, cfg)
    second = render(advect(field, flow), cfg)
    if cfg.noise_amplitude:
        rng = np.random.default_rng(field.seed ^ _NOISE_SEED_SALT)
        amp = cfg.noise_amplitude
        first = first + rng.integers(-amp, amp + 1, size=first.shape)
        second = second + rng.integers(-amp, amp + 1, size=second.shape)
    first = np.clip(first, 0, MAX_INTENSITY)
    second = np.clip(second, 0, MAX_INTENSITY)
    return GrayImage.from_array(first), GrayImage.from_array(second)


def interior_particle_counts(
    field: ParticleField, flow: FlowSpec, window_size: int, pattern_size: int,
    width: int, height: int,
) -> np.ndarray:
    """Per-window count of particles whose disc lies fully inside the
    frame-1 block that sources the frame-2 pattern.

    Only meaningful for uniform integer flows, where that block is the
    centered pattern block shifted back by the displacement.
    """
    if flow.kind != "uniform":
        raise ConfigError("interior counts are defined for uniform flows only")
    cols = width // window_size
    rows = height // window_size
    off = (window_size - pattern_size) // 2
    counts = np.zeros(rows * cols, dtype=int)
    if field.count == 0:
        return counts
    x, y = field.positions[:, 0], field.positions[:, 1]
    r = field.radius
    for wy in range(rows):
        for wx in range(cols):
            bx = wx * window_size + off - flow.dx
            by = wy * window_size + off - flow.dy
            ok = (
                (x - r >= bx)
                & (x + r <= bx + pattern_size - 1)
                & (y - r >= by)
                & (y + r <= by + pattern_size - 1)
            )
            counts[wy * cols + wx] = int(ok.sum())
    return counts
