"""lsd-extract: pooled per-layer hidden-state dumps in LSD1 format."""

from .dump_writer import write_lsd1
from .extract import ExampleParseError, ExtractionConfig, extract, read_examples

__version__ = "0.1.0"

__all__ = [
    "ExampleParseError",
    "ExtractionConfig",
    "extract",
    "read_examples",
    "write_lsd1",
]
