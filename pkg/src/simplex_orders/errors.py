"""Exception hierarchy shared by the library and the command line."""


class SimplexError(ValueError):
    """Base class; raised directly for domain (precondition) violations."""


class CapacityError(SimplexError):
    """The input is valid but exceeds a documented computational limit."""


class TruncationError(SimplexError):
    """A number stream ran out before the requested count was read."""

    def __init__(self, message: str, count_read: int):
        super().__init__(message)
        self.count_read = count_read


class DataError(SimplexError):
    """A number stream contained a malformed or out-of-range value."""
