"""Exception types shared across the package."""


class OriginExclusionError(ValueError):
    """Raised when a point (or a stencil around it) enters the excluded
    ball around the origin, where the connection is generally singular."""


class AxisExclusionError(ValueError):
    """Raised when the hedgehog construction is evaluated on the
    nonpositive 3-axis, where its auxiliary rotation frame degenerates."""


class ProfileValidationError(ValueError):
    """Raised when a radial profile fails its consistency checks
    (non-finite values, derivative inconsistent with the values, or a
    declared limit the tail does not approach)."""


class IntegrationError(RuntimeError):
    """Raised when the transport integrator cannot reach the requested
    tolerance within the step budget.  Carries the best error estimate."""

    def __init__(self, message: str, error_estimate: float):
        super().__init__(message)
        self.error_estimate = error_estimate
