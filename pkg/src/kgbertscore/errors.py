"""Exception types shared across the package.

Every error raised on bad input data derives from :class:`KGBertScoreError`,
so callers (notably the CLI) can distinguish data problems (exit 1) from
usage problems (exit 2, plain ``ValueError`` or argparse errors).
"""


class KGBertScoreError(Exception):
    """Base class for all data and scoring errors."""


class CorpusError(KGBertScoreError):
    """Malformed corpus JSONL: bad JSON, missing fields, duplicate ids."""


class HumanScoreError(KGBertScoreError):
    """Malformed human-judgment CSV: bad header, non-finite or duplicate rows."""


class EmbeddingError(KGBertScoreError):
    """Malformed or degenerate embedding data.

    ``byte_offset`` is set when the error was detected at a known position
    in a binary embedding file (truncation, bad magic).
    """

    def __init__(self, message: str, byte_offset: int | None = None):
        super().__init__(message)
        self.byte_offset = byte_offset


class AlignmentError(KGBertScoreError):
    """Corpus and embedding file disagree (pair counts, dimensions)."""


class ScoringError(KGBertScoreError):
    """A per-pair scoring failure, tagged with the offending pair_id."""


class CorrelationError(KGBertScoreError):
    """Correlation is undefined for the given inputs."""
