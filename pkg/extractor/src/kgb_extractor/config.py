"""Extraction settings."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_LAYER = 9
DEFAULT_MAX_TOKENS = 512
DEFAULT_BATCH_SIZE = 16


@dataclass(frozen=True)
class ExtractorConfig:
    """Which encoder to run and how.

    ``layer`` indexes the encoder's hidden states, where 0 is the
    embedding-layer output and N is the last transformer block; the upper
    bound depends on the model and is checked once it is loaded.
    ``max_tokens`` is the truncation limit including special tokens.
    """

    model_id: str
    layer: int = DEFAULT_LAYER
    max_tokens: int = DEFAULT_MAX_TOKENS
    batch_size: int = DEFAULT_BATCH_SIZE

    def __post_init__(self):
        if not self.model_id or not isinstance(self.model_id, str):
            raise ValueError("model_id must be a non-empty string")
        if self.layer < 0:
            raise ValueError(f"layer must be non-negative, got {self.layer}")
        if self.max_tokens < 1:
            raise ValueError(f"max_tokens must be positive, got {self.max_tokens}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be positive, got {self.batch_size}")
