class DerangeError(Exception):
    """Base class for all errors raised by the package."""


class InvalidInput(DerangeError, ValueError):
    pass


class CapExceeded(DerangeError):
    """A declared enumeration or search cap would be exceeded."""


class InvariantViolation(DerangeError, AssertionError):
    """A proved statement failed to hold; this signals an implementation bug."""
