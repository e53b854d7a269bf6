"""Binary cross-correlation PIV with a discrete-event GALS ring simulator."""

from .errors import (
    CalibrationError,
    ConfigError,
    DeadlockError,
    DimensionError,
    InputFormatError,
    RingPivError,
)
from .images import BinaryImage, GrayImage, MAX_INTENSITY
from .piv import (
    CorrelationPlane,
    Displacement,
    PivConfig,
    VectorField,
    WindowGrid,
    binarize_adaptive,
    binarize_global,
    compute_field,
    extract_pattern,
    peak_displacement,
    tile_windows,
    xcorr_binary,
    xcorr_gray,
)
from .synth import FlowSpec, ParticleField, RenderConfig, advect, render_pair, seed_particles

__all__ = [
    "BinaryImage",
    "CalibrationError",
    "ConfigError",
    "CorrelationPlane",
    "DeadlockError",
    "DimensionError",
    "Displacement",
    "FlowSpec",
    "GrayImage",
    "InputFormatError",
    "MAX_INTENSITY",
    "ParticleField",
    "PivConfig",
    "RenderConfig",
    "RingPivError",
    "VectorField",
    "WindowGrid",
    "advect",
    "binarize_adaptive",
    "binarize_global",
    "compute_field",
    "extract_pattern",
    "peak_displacement",
    "render_pair",
    "seed_particles",
    "tile_windows",
    "xcorr_binary",
    "xcorr_gray",
]
