"""
Custom exception and warning classes for the OLCT toolkit.
"""


class OlctError(Exception):
    """Base class for OLCT-related errors."""

    pass


class UnimodularityViolation(OlctError):
    """Raised when the parameter matrix does not satisfy ad - bc = 1."""

    pass


class DegenerateCase(OlctError):
    """Raised when an operation needs the other branch (b close to 0, d <= 0)."""

    pass


class GridMismatch(OlctError):
    """Raised when two grids that must agree do not."""

    pass


class GridInvalid(OlctError):
    """Raised when a sampling grid is malformed."""

    pass


class EdgeOutOfRange(OlctError):
    """Raised when a filter edge lies outside the u-grid."""

    pass


class NumericalRangeError(OlctError):
    """Raised when an iterated operator leaves the floating-point range."""

    pass


class NumericalOverflow(NumericalRangeError):
    """Raised when operator norms overflow before a usable sequence exists."""

    pass


class NumericalUnderflow(NumericalRangeError):
    """Raised when operator norms underflow before a usable sequence exists."""

    pass


class ConfigInvalid(OlctError):
    """Raised when a run configuration fails validation."""

    pass


class ResourceNotFoundError(OlctError, FileNotFoundError):
    """Raised when a required input file is missing."""

    pass


class ParseError(OlctError):
    """Raised when a signal or config file cannot be parsed."""

    def __init__(self, message, path=None, line_number=None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location = f" in '{path}'"
        if line_number is not None:
            location += f" at line {line_number}"
        super().__init__(f"{message}{location}")


class HeaderMismatch(ParseError):
    """Raised when the header disagrees with the data rows."""

    pass


class OlctWarning(UserWarning):
    """Base class for non-fatal numerical caveats."""

    pass


class EdgeLeakage(OlctWarning):
    """Issued when a signal is not negligible at the grid ends."""

    pass
