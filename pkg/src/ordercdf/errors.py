"""Exception hierarchy shared by all modules."""


class OrderCdfError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OrderCdfError):
    """A point or parameter lies outside the universe it was used with."""


class ConstructionError(OrderCdfError):
    """An immutable value failed its construction-time invariants."""


class ConfigError(OrderCdfError):
    """A config file is malformed or violates the documented schema."""


class UnsupportedSpaceError(OrderCdfError):
    """The operation needs a complete order and the space is not complete."""


class UndefinedPointError(OrderCdfError):
    """The pseudo-inverse has no value at the requested level.

    Carries a human-readable reason describing the super-level set whose
    infimum does not exist inside the space.
    """


class PropositionViolation(OrderCdfError):
    """An internal cross-check between two independent code paths failed."""


class IntegrandError(OrderCdfError):
    """The user-supplied integrand raised on a support point."""

    def __init__(self, point, cause):
        super().__init__(f"integrand failed at point {point!r}: {cause}")
        self.point = point
        self.cause = cause
