"""Exception types shared across the package."""


class IfasError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(IfasError, ValueError):
    pass


class CompositionNonzero(IfasError, ValueError):
    pass


class SizeMismatch(IfasError, ValueError):
    pass


class CapExceeded(IfasError):
    pass


class NotMonotone(IfasError, ValueError):
    pass


class NotBased(IfasError, ValueError):
    pass


class IndexOutOfRange(IfasError, IndexError):
    pass


class UnknownName(IfasError, KeyError):
    pass


class RingNotRational(IfasError, ValueError):
    pass


class ParseError(IfasError, ValueError):
    """Malformed textual input; carries a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
