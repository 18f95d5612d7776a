"""Exception hierarchy. The CLI maps ExtractorError to exit code 1."""


class ExtractorError(Exception):
    """Base class for all data and model errors of this package."""


class CorpusFormatError(ExtractorError):
    """The corpus JSONL file cannot be parsed or is inconsistent."""


class ModelError(ExtractorError):
    """The encoder or tokenizer cannot be loaded, or the layer is invalid."""


class ExtractionError(ExtractorError):
    """A sentence cannot be embedded (e.g. empty after special-token removal)."""


class DescribeError(ExtractorError):
    """A KGBE file or its manifest is unreadable or inconsistent."""
