"""Exception hierarchy for the layersep toolkit.

Everything raised on a validated code path derives from ``LayerSepError``,
so callers (and the CLI) can distinguish toolkit failures from bugs.
"""


class LayerSepError(Exception):
    """Base class for all toolkit errors."""


# --- construction / validation ------------------------------------------


class DimensionMismatchError(LayerSepError):
    """Row/label counts or layer shapes disagree."""


class NonFiniteValueError(LayerSepError):
    """A coordinate is NaN or infinite."""


class InvalidLabelError(LayerSepError):
    """A label is outside {0, 1}."""


class TooFewPointsError(LayerSepError):
    """Fewer than two points supplied."""


class EmptyClassError(LayerSepError):
    """An operation needs both classes but one has no members."""


class DegenerateDataError(LayerSepError):
    """All points coincide; no scatter structure exists."""


# --- analysis -------------------------------------------------------------


class LayerMismatchError(LayerSepError):
    """Two per-layer series do not cover the same layer indices."""


class ConstantSeriesError(LayerSepError):
    """A series is constant (or too short), so correlation is undefined."""


class SentinelPresentError(LayerSepError):
    """An infinite sentinel value makes the requested statistic meaningless."""


class InvalidFractionError(LayerSepError):
    """Sampling fraction outside (0, 1]."""


class EmptyClassAfterSamplingError(LayerSepError):
    """Subsampling kept losing a class after all retries."""


class CurveFormatError(LayerSepError):
    """An accuracy-curve file does not match the expected CSV schema."""


# --- dump format ----------------------------------------------------------


class DumpFormatError(LayerSepError):
    """Base class for malformed layer-dump files."""


class BadMagicError(DumpFormatError):
    """Stream does not start with the LSD1 magic bytes."""


class UnsupportedVersionError(DumpFormatError):
    """Dump version is not one this reader understands."""


class TruncatedFileError(DumpFormatError):
    """Stream ends before the header-implied length."""


class TrailingDataError(DumpFormatError):
    """Stream continues past the header-implied length."""


class InvalidHeaderError(DumpFormatError):
    """Header fields violate the format invariants."""
