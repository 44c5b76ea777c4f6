"""layersep: class-separability analysis of per-layer representations.

Measures how separable the two classes of a labeled dataset are in each
layer of an encoder's hidden representations, and recommends where to
truncate the encoder before fine-tuning. Works on binary layer dumps
(LSD1) produced by any extractor that follows the format.
"""

from .analysis import (
    AccuracyCurve,
    CorrelationReport,
    Recommendation,
    SampleInfo,
    SeparabilityReport,
    build_accuracy_curve,
    correlate,
    read_accuracy_curve,
    recommend,
    subsample,
    subsample_stack,
    sweep,
    sweep_all,
)
from .dumpio import read_dump, write_dump, write_report
from .errors import (
    BadMagicError,
    ConstantSeriesError,
    CurveFormatError,
    DegenerateDataError,
    DimensionMismatchError,
    DumpFormatError,
    EmptyClassAfterSamplingError,
    EmptyClassError,
    InvalidFractionError,
    InvalidHeaderError,
    InvalidLabelError,
    LayerMismatchError,
    LayerSepError,
    NonFiniteValueError,
    SentinelPresentError,
    TooFewPointsError,
    TrailingDataError,
    TruncatedFileError,
    UnsupportedVersionError,
)
from .measures import Measure, MeasureFlag, MeasureValue, csm, hm, si
from .neighbors import ABSENT, NeighborResult, all_nearest, all_nearest_reference
from .pointset import (
    ClassStatistics,
    LabeledPointSet,
    LayerStack,
    build_layer_stack,
    build_point_set,
    class_statistics,
)

__version__ = "0.1.0"

__all__ = [
    "ABSENT",
    "AccuracyCurve",
    "BadMagicError",
    "ClassStatistics",
    "ConstantSeriesError",
    "CorrelationReport",
    "CurveFormatError",
    "DegenerateDataError",
    "DimensionMismatchError",
    "DumpFormatError",
    "EmptyClassAfterSamplingError",
    "EmptyClassError",
    "InvalidFractionError",
    "InvalidHeaderError",
    "InvalidLabelError",
    "LabeledPointSet",
    "LayerMismatchError",
    "LayerSepError",
    "LayerStack",
    "Measure",
    "MeasureFlag",
    "MeasureValue",
    "NeighborResult",
    "NonFiniteValueError",
    "Recommendation",
    "SampleInfo",
    "SentinelPresentError",
    "SeparabilityReport",
    "TooFewPointsError",
    "TrailingDataError",
    "TruncatedFileError",
    "UnsupportedVersionError",
    "all_nearest",
    "all_nearest_reference",
    "build_accuracy_curve",
    "build_layer_stack",
    "build_point_set",
    "class_statistics",
    "correlate",
    "csm",
    "hm",
    "read_accuracy_curve",
    "read_dump",
    "recommend",
    "si",
    "subsample",
    "subsample_stack",
    "sweep",
    "sweep_all",
    "write_dump",
    "write_report",
]
