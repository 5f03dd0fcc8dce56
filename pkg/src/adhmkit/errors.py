"""Exception types shared across the package."""


class ADHMKitError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(ADHMKitError, ValueError):
    """Input has inconsistent, non-finite, or unsupported shape/content."""


class DomainError(ADHMKitError, ValueError):
    """A chart or overlap precondition does not hold for the given input."""


class InvalidPointError(ADHMKitError, ValueError):
    """An operation requiring admissible data received an invalid point."""


class IndeterminateError(ADHMKitError):
    """A numerical verdict could not be certified at the given tolerances."""


class ParseError(ADHMKitError, ValueError):
    """Malformed serialized input."""

    def __init__(self, detail, path=None):
        super().__init__(detail if path is None else f"{path}: {detail}")
        self.detail = detail
        self.path = path
