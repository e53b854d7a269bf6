"""Exception types shared across the package."""


class RingPivError(Exception):
    """Base class for all package errors."""


class DimensionError(RingPivError, ValueError):
    """Image/grid geometry mismatch (non-divisible tiling, size mismatch)."""


class ConfigError(RingPivError, ValueError):
    """Invalid configuration value or combination."""


class InputFormatError(RingPivError, ValueError):
    """Malformed or unsupported input file (bad PGM magic, oversized pixels, bad CSV)."""


class CalibrationError(RingPivError, RuntimeError):
    """Timing-model fit failed or reference data insufficient."""


class DeadlockError(RingPivError, RuntimeError):
    """Simulation made no progress while work was still pending."""

    def __init__(self, stalled_modules):
        self.stalled_modules = sorted(stalled_modules)
        super().__init__(
            "simulation deadlock; stalled modules: " + ", ".join(self.stalled_modules)
        )
