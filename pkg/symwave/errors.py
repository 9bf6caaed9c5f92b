"""Exception hierarchy for symwave."""

from typing import Any, Optional, Sequence


class SymwaveError(Exception):
    """Base class for all symwave errors."""


class ConfigError(SymwaveError):
    """Raised when an experiment configuration is malformed."""

    def __init__(self, message: str, key_path: str = ""):
        self.key_path = key_path
        if key_path:
            message = f"{key_path}: {message}"
        super().__init__(message)


class AdmissibilityError(SymwaveError):
    """Raised when a field with nonzero x-mean reaches an operator that needs L^-1."""

    def __init__(self, message: str = "zero x-mode not in range of L"):
        super().__init__(message)


class DerivativeOrderError(SymwaveError):
    """Raised when a spectral derivative of total order above 4 is requested."""


class ZeroFieldError(SymwaveError):
    """Raised when an observable is undefined for the zero field."""

    def __init__(self, message: str = "symmetry undefined for zero field"):
        super().__init__(message)


class SpeedUndefinedError(SymwaveError):
    """Raised when a translation speed cannot be measured."""

    def __init__(self, message: str = "speed undefined"):
        super().__init__(message)


class BlowUpError(SymwaveError):
    """
    Raised when the time stepper produces non-finite values.

    The partial run is attached so callers can still flush it to disk.
    """

    def __init__(self, t: float, snapshots: Optional[Sequence[Any]] = None,
                 diagnostics: Optional[Any] = None):
        self.t = t
        self.snapshots = list(snapshots or [])
        self.diagnostics = diagnostics
        super().__init__(f"blow-up detected at t={t:.17g}")


class ConvergenceError(SymwaveError):
    """Raised when an iterative solver stops without meeting its tolerance."""

    def __init__(self, message: str, last_residual: float):
        self.last_residual = last_residual
        super().__init__(f"{message} (last residual {last_residual:.3e})")


class SingularJacobianError(SymwaveError):
    """Raised when the Newton linear system cannot be solved."""

    def __init__(self, amplitude: float):
        self.amplitude = amplitude
        super().__init__(
            f"Jacobian is singular at amplitude A={amplitude:.6g}; "
            "try a different pinned amplitude"
        )


class DegenerateWaveError(SymwaveError):
    """Raised when the traveling-wave problem collapses to the trivial solution."""


class QuadratureError(SymwaveError):
    """Raised when adaptive quadrature fails to converge."""


class DomainError(SymwaveError):
    """Raised when a mapped point falls outside the sampled region."""

    def __init__(self, message: str, required: tuple):
        self.required = required
        super().__init__(f"{message}; required domain {required}")


class ModelError(SymwaveError):
    """Raised when an operation does not support the given model variant."""


class InsufficientDataError(SymwaveError):
    """Raised when a report needs more samples than were provided."""


class SnapshotFormatError(ConfigError):
    """Raised when a snapshot sidecar or payload is malformed."""
