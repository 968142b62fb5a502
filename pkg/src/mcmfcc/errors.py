"""Exception types raised by the mcmfcc package.

Plain argument-validation failures (bad bands, tap counts, thresholds,
negative frequencies, ...) raise ``ValueError``; the classes below cover
conditions a caller may want to catch specifically.
"""


class McmfccError(Exception):
    """Base class for package-specific errors."""


class WavFormatError(McmfccError):
    """WAV file is not mono 16-bit PCM."""


class EmptyAudioError(McmfccError):
    """Audio stream decoded to zero samples."""


class UnsupportedRateError(McmfccError):
    """Sample rate outside the supported set (8 or 16 kHz)."""


class RateMismatchError(McmfccError):
    """Operands disagree on sample rate."""


class TooShortError(McmfccError):
    """Signal shorter than a single analysis frame."""


class DegenerateFilterError(McmfccError):
    """A mel filter's triangle covers no FFT bin."""


class ShapeMismatchError(McmfccError):
    """Spectrum and filterbank were built for different grids."""


class MissingChannelError(McmfccError):
    """Channel summaries are not contiguous from index 1."""


class UnknownVariantError(McmfccError):
    """Variant name is not one of m5fb/m2fb/m1fb/scfb."""


class ParseError(McmfccError):
    """Feature file or manifest is malformed."""
