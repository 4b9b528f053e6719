"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain on which a function is defined."""


class QuadratureError(ArithmeticError):
    """An adaptive integrator could not meet its absolute-error target."""


class ConfigError(ValueError):
    """A campaign configuration is malformed or inconsistent."""


class EvaluationError(RuntimeError):
    """A check inside a campaign raised; carries the offending index tuple."""

    def __init__(self, condition_id, indices, cause):
        self.condition_id = condition_id
        self.indices = tuple(indices)
        self.cause = cause
        super().__init__(f"{condition_id} at {self.indices}: {cause!r}")

    def __reduce__(self):
        # Rebuild from the original fields when crossing a process boundary.
        return (type(self), (self.condition_id, self.indices, self.cause))
