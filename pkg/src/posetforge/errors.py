"""Exception types shared across the package."""


class PosetforgeError(Exception):
    """Base class for all package-specific errors."""


class CycleError(PosetforgeError):
    """Raised when a declared relation would force x <= y <= x for x != y."""


class SizeError(PosetforgeError):
    """Raised when a construction would exceed a configured size bound."""


class AmbientMismatch(PosetforgeError):
    """Raised when two subalgebras do not live in the same ambient algebra."""


class DomainError(PosetforgeError):
    """Raised when a projection map's declared domain is not dense."""


class IllegalStrategy(PosetforgeError):
    """Raised when a strategy proposes a move that is not legal."""


class WitnessError(PosetforgeError):
    """Raised when a witness construction is requested at an excluded point."""


class InputError(PosetforgeError):
    """Raised on semantically invalid caller-supplied data."""


class FormatError(PosetforgeError):
    """Raised when a text-format file cannot be parsed."""
