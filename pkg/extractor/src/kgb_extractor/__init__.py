"""Produce KGBE embedding files from corpus text with a pre-trained encoder."""

from .config import ExtractorConfig
from .corpus_io import PairText, read_pairs
from .errors import (
    CorpusFormatError,
    DescribeError,
    ExtractionError,
    ExtractorError,
    ModelError,
)
from .extract import ExtractResult, describe, extract, load_encoder, manifest_path_for
from .kgbe import KgbeHeader, read_header, write_kgbe

__version__ = "0.1.0"

__all__ = [
    "CorpusFormatError",
    "DescribeError",
    "ExtractionError",
    "ExtractorConfig",
    "ExtractorError",
    "ExtractResult",
    "KgbeHeader",
    "ModelError",
    "PairText",
    "describe",
    "extract",
    "load_encoder",
    "manifest_path_for",
    "read_header",
    "read_pairs",
    "write_kgbe",
    "__version__",
]
