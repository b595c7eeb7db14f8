"""Exception types shared across the package.

Missing input files raise the builtin FileNotFoundError; everything else
derives from SpectromapError so callers can catch the package in one clause.
"""


class SpectromapError(Exception):
    """Base class for errors raised by spectromap-core."""


class UnsupportedFormatError(SpectromapError):
    """File is not a WAV container or uses an encoding outside the contract."""


class EmptyAudioError(SpectromapError):
    """Audio stream holds zero frames."""


class InvalidParamsError(SpectromapError, ValueError):
    """Parameter value or combination violates a precondition."""


class SignalTooShortError(SpectromapError):
    """Signal shorter than a single analysis frame."""


class EmptyBandError(InvalidParamsError):
    """Band holds no samples."""


class WindowTooLongError(InvalidParamsError):
    """Sliding window does not fit the band it runs over."""


class ShapeMismatchError(SpectromapError):
    """Matrices that must share a shape do not."""


class EmptyClassError(SpectromapError):
    """Aggregation requested over zero members."""


class ParseError(SpectromapError, ValueError):
    """Malformed fingerprint file. Carries the 1-based line when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class SchemaError(ParseError):
    """Fingerprint file lacks required structure (header, fields)."""
