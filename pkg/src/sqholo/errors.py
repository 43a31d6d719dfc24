"""Exception types raised by sqholo."""


class SqholoError(Exception):
    """Base class for all package errors."""


class DimensionError(SqholoError, ValueError):
    """Grid shapes that are odd, too small, or do not match."""


class ImageError(SqholoError, OSError):
    """An input image could not be read or is not usable as a target."""


class NumericalError(SqholoError, ArithmeticError):
    """A computation produced a non-finite or degenerate result."""
