"""Exception types shared across the package."""


class NemringError(Exception):
    """Base class for all package errors."""


class InvalidInputError(NemringError, ValueError):
    """An argument violates a documented precondition."""


class DegenerateTensorError(NemringError, ValueError):
    """Operation undefined on the maximally biaxial cone (two leading
    eigenvalues coincide, which includes the zero tensor)."""


class NearZeroTensorError(NemringError, ValueError):
    """Tensor norm below the floor where the field-potential gradient blows up."""


class InvalidSpecError(NemringError, ValueError):
    """A mesh/seed/config specification is internally inconsistent."""


class BoundaryViolationError(NemringError, ValueError):
    """A field does not satisfy the required boundary or axis conditions."""


class SolverFailureError(NemringError, RuntimeError):
    """An iterative solver did not reach its tolerance.

    Carries the last iterate so callers can inspect or salvage it.
    """

    def __init__(self, message, last_iterate=None, diagnostics=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.diagnostics = diagnostics or {}


class SolverStallError(SolverFailureError):
    """Line search underflowed: no descent direction could be accepted."""


class ConfigError(NemringError, ValueError):
    """Run configuration file is malformed or inconsistent."""
