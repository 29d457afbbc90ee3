"""Exception types shared across the package."""


class SupertimeError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(SupertimeError, ValueError):
    """An input failed a precondition (wrong sign, unknown tag, bad shape)."""


class DipoleApproximationError(ValidationError):
    """Separation d is too large relative to R for the dipole force formula."""


class RelativisticMotionError(ValidationError):
    """Trajectory would require relativistic speeds (d not small vs c*t0)."""


class DivergentIntegralError(SupertimeError):
    """A quadrature did not converge (e.g. window with a 1/omega tail)."""


class GridError(SupertimeError):
    """Numerical grid is unusable (too narrow, boundary contamination, ...)."""


class NoEntanglementError(ValidationError):
    """Zero force difference: entanglement is never generated."""
