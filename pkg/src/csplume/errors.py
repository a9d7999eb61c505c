"""
Exception hierarchy for csplume.

Input problems subclass ``ValueError`` so callers that only care about
"bad input" can keep catching that; the CLI maps each family to an exit code.
"""


class CsPlumeError(Exception):
    """Base class for every error raised by csplume."""


class InvalidParameterError(CsPlumeError, ValueError):
    """A configuration value or argument is out of its allowed range."""


class FormatError(CsPlumeError, ValueError):
    """A file does not follow the HSC/HSM layout."""


class BadMagicError(FormatError):
    """The file does not start with the expected magic bytes."""


class TruncatedPayloadError(FormatError):
    """The payload is shorter than the header promises."""


class DimensionOverflowError(FormatError):
    """Header dimensions are zero or describe an impossibly large payload."""


class NonFiniteDataError(FormatError):
    """Loaded data contains NaN or Inf."""


class DimensionMismatchError(CsPlumeError, ValueError):
    """Array shapes of two pipeline inputs do not agree."""


class RoiOutOfBoundsError(DimensionMismatchError):
    """A region of interest does not fit inside the cube."""


class NonPowerOfTwoError(CsPlumeError, ValueError):
    """A transform length is not a power of two."""


class DegenerateSignatureError(CsPlumeError, ValueError):
    """The target signature is the zero vector."""


class DegenerateCovarianceError(CsPlumeError, ValueError):
    """Background covariance has rank zero; diagonal loading cannot fix it."""


class EmptySelectionError(CsPlumeError, ValueError):
    """A frame selection or background set is empty."""


class ManifestError(CsPlumeError, ValueError):
    """A pipeline manifest is missing fields or references missing artifacts."""


class ConvergenceError(CsPlumeError, RuntimeError):
    """The solver did not reach its constraint tolerance (strict mode only)."""
