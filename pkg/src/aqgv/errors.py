"""Exception types shared across the package.

All inherit from ValueError so callers that only care about "bad input"
can catch a single base class.
"""


class InputShapeError(ValueError):
    """Mismatched vector lengths, mixed fields, or malformed matrices."""


class ParameterRangeError(ValueError):
    """Integer parameters outside their documented ranges."""


class EnumerationSizeError(ValueError):
    """An exhaustive enumeration would exceed its hard size guard."""


class UnsupportedFieldError(ValueError):
    """Field order is not a supported prime (or not a prime power where one is required)."""


class DomainError(ValueError):
    """Real-valued argument outside the function's domain."""
