"""Exception types raised by the public API."""


class OlsError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(OlsError):
    """A signal or filter was constructed from an empty sequence."""


class RaggedFilters(OlsError):
    """Filters in one set do not all share the same tap length."""


class BadOrigin(OlsError):
    """Filter origin outside [0, tap_length - 1]."""


class DomainMismatch(OlsError):
    """Operation applied to a signal in the wrong domain."""


class BadLength(OlsError):
    """Transform length is not a power of two in the supported range."""


class BadSpectrum(OlsError):
    """Packed real spectrum has non-real edge bins beyond tolerance."""


class FilterTooLong(OlsError):
    """Filter exceeds the maximum segment length; use full_fft_convolve."""


class SegmentTooSmall(OlsError):
    """Segment length smaller than the filter length."""


class PlanMismatch(OlsError):
    """Filter set and segment plan disagree (tap length, FFT length, kind)."""


class LayoutMismatch(OlsError):
    """Cached filter spectra use a different layout than the engine's FFT."""


class HaloUnavailable(OlsError):
    """Segment too short to supply the neighbor samples a stencil needs."""


class TooLarge(OlsError):
    """Padded transform exceeds the configured buffer budget."""
