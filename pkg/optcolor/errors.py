"""
Exception hierarchy and CLI exit codes for optcolor.

Everything raised for bad input derives from ValueError so callers that
only care about "the input was wrong" can keep catching ValueError.
"""

from typing import Optional


# Exit statuses used by the command-line front end
EXIT_OK = 0
EXIT_USAGE = 2          # argparse's own status for bad flags
EXIT_PARSE_ERROR = 3
EXIT_VERIFY_FAILED = 4
EXIT_IO_ERROR = 5


class OptcolorError(Exception):
    """Base mixin for every error raised by the package."""


class GraphInputError(OptcolorError, ValueError):
    """Invalid graph, coloring or parameter input (ids out of range, length mismatch, ...)."""


class GraphParseError(GraphInputError):
    """
    Malformed text input.

    Args:
        message: What went wrong
        line: 1-based line number of the offending line
        source: Optional name of the file/stream being parsed
    """

    def __init__(self, message: str, line: int, source: Optional[str] = None):
        self.line = line
        self.source = source
        self.reason = message
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {message}")


class UnsupportedFormatError(GraphParseError):
    """A recognised but unsupported Matrix Market variant (complex field, array format, hermitian)."""


class CapacityError(OptcolorError, ValueError):
    """Requested graph does not fit the vertex-id width."""


class ConfigError(OptcolorError, ValueError):
    """An OPTCOLOR_* environment variable holds an invalid value."""


class ReportError(OptcolorError, ValueError):
    """A benchmark report violates its invariants."""


class VerificationError(OptcolorError, RuntimeError):
    """
    A coloring produced by an algorithm is not complete and proper.

    Args:
        message: Description of the failing run
        report: The ConflictReport returned by the verifier
    """

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
