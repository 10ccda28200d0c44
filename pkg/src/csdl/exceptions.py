"""Exception types shared across the package.

All of these derive from ValueError (except NumericalError and OutputError)
so that callers who do not care about the distinction can catch the usual
builtin. The CLI maps them onto its exit codes.
"""


class CsdlError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(CsdlError, ValueError):
    """Array shapes are inconsistent with the operation's contract."""


class ParameterError(CsdlError, ValueError):
    """A scalar parameter is outside its legal range."""


class InputError(CsdlError, ValueError):
    """User-supplied input (signal file, config file, flag value) is invalid."""


class OutputError(CsdlError, OSError):
    """An output path cannot be written."""


class NumericalError(CsdlError, ArithmeticError):
    """An internal computation produced non-finite values."""
