"""Exception types shared across the package."""


class SegcoverError(Exception):
    """Base class for all package errors."""


class ParseError(SegcoverError):
    """Input text could not be decoded (malformed JSON, wrong shape)."""


class ValidationError(SegcoverError):
    """A value violates a documented invariant.

    ``field`` names the offending input field, e.g. ``"rho"`` or ``"segments[3]"``.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ResourceLimitError(SegcoverError):
    """An exhaustive search exceeded its configured work budget."""
