"""Run a pre-trained encoder over a corpus and write its KGBE file.

For every pair, src_text and mt_text are tokenized, encoded, and the hidden
states of the configured layer are kept for real (non-special, non-padding)
token positions only, so the scoring side never sees [CLS]/[SEP]-style
delimiters. Matrices are written in corpus order as float32, with a JSON
manifest sidecar describing how they were produced.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
import transformers
from transformers import AutoModel, AutoTokenizer

from .config import ExtractorConfig
from .corpus_io import PairText, read_pairs
from .errors import DescribeError, ExtractionError, ModelError
from .kgbe import read_header, write_kgbe

logger = logging.getLogger("kgb_extractor")


@dataclass(frozen=True)
class ExtractResult:
    out_path: Path
    manifest_path: Path
    pair_count: int
    dim: int
    truncated_pair_ids: tuple[str, ...]


def manifest_path_for(out_path: str | Path) -> Path:
    return Path(str(out_path) + ".manifest.json")


def load_encoder(model_id: str):
    """Tokenizer and encoder for ``model_id`` (hub name or local directory)."""
    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except Exception as e:
        raise ModelError(f"cannot load model {model_id!r}: {e}") from e
    model.eval()
    return tokenizer, model


def _check_layer(layer: int, model, model_id: str) -> None:
    n_layers = int(model.config.num_hidden_layers)
    # hidden_states holds n_layers + 1 entries; index 0 is the embedding output.
    if not 0 <= layer <= n_layers:
        raise ModelError(
            f"layer {layer} out of range for {model_id!r}: valid layers are 0..{n_layers}"
        )


def _embed_batch(texts, tokenizer, model, layer: int, max_tokens: int) -> list[np.ndarray]:
    """One float32 (tokens, dim) matrix per text, specials and padding dropped."""
    enc = tokenizer(
        texts,
        padding=True,
        truncation=True,
        max_length=max_tokens,
        return_special_tokens_mask=True,
        return_tensors="pt",
    )
    with torch.no_grad():
        out = model(
            input_ids=enc["input_ids"],
            attention_mask=enc["attention_mask"],
            output_hidden_states=True,
        )
    hidden = out.hidden_states[layer]
    keep = (enc["attention_mask"] == 1) & (enc["special_tokens_mask"] == 0)
    return [
        np.ascontiguousarray(hidden[i][keep[i]].numpy(), dtype="<f4")
        for i in range(len(texts))
    ]


def _find_truncated(pairs: list[PairText], tokenizer, max_tokens: int) -> list[str]:
    ids = []
    for pair in pairs:
        lengths = [
            len(tokenizer(text, truncation=False)["input_ids"])
            for text in (pair.src_text, pair.mt_text)
        ]
        if max(lengths) > max_tokens:
            ids.append(pair.pair_id)
    return ids


def extract(
    corpus_path: str | Path, config: ExtractorConfig, out_path: str | Path
) -> ExtractResult:
    """Embed every pair of the corpus and write ``out_path`` plus its manifest.

    Raises:
        CorpusFormatError: the corpus does not parse.
        ModelError: the encoder cannot be loaded or ``config.layer`` is out
            of range for it.
        ExtractionError: some sentence has no tokens left after special-token
            removal (the failing pair_ids are listed).
    """
    pairs = read_pairs(corpus_path)
    tokenizer, model = load_encoder(config.model_id)
    _check_layer(config.layer, model, config.model_id)

    truncated = _find_truncated(pairs, tokenizer, config.max_tokens)
    if truncated:
        logger.warning(
            "%d pair(s) exceed max_tokens=%d and were truncated: %s",
            len(truncated), config.max_tokens, ", ".join(truncated),
        )

    texts: list[str] = []
    for pair in pairs:
        texts.append(pair.src_text)
        texts.append(pair.mt_text)
    matrices: list[np.ndarray] = []
    for start in range(0, len(texts), config.batch_size):
        batch = texts[start : start + config.batch_size]
        matrices.extend(_embed_batch(batch, tokenizer, model, config.layer, config.max_tokens))

    empty = [
        pairs[k].pair_id
        for k in range(len(pairs))
        if matrices[2 * k].shape[0] == 0 or matrices[2 * k + 1].shape[0] == 0
    ]
    if empty:
        raise ExtractionError(
            "no tokens left after special-token removal for pair(s): " + ", ".join(empty)
        )

    dim = int(model.config.hidden_size)
    out_path = Path(out_path)
    write_kgbe(
        [(matrices[2 * k], matrices[2 * k + 1]) for k in range(len(pairs))], dim, out_path
    )
    manifest = {
        "model_id": config.model_id,
        "layer": config.layer,
        "tokenizer_class": type(tokenizer).__name__,
        "tokenizer_version": transformers.__version__,
        "max_tokens": config.max_tokens,
        "pair_count": len(pairs),
        "dim": dim,
    }
    mf_path = manifest_path_for(out_path)
    mf_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return ExtractResult(
        out_path=out_path,
        manifest_path=mf_path,
        pair_count=len(pairs),
        dim=dim,
        truncated_pair_ids=tuple(truncated),
    )


def describe(kgbe_path: str | Path, manifest_path: str | Path | None = None) -> str:
    """Human-readable summary of a KGBE file and its manifest.

    A missing manifest degrades to a header-only summary with a warning; a
    manifest that contradicts the file header is an error.
    """
    header = read_header(kgbe_path)
    lines = [
        f"kgbe: {kgbe_path}",
        f"  dim: {header.dim}",
        f"  pair_count: {header.pair_count}",
    ]
    if manifest_path is None:
        manifest_path = manifest_path_for(kgbe_path)
    try:
        manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        logger.warning("manifest %s not found; header-only summary", manifest_path)
        return "\n".join(lines) + "\n"
    except (OSError, json.JSONDecodeError) as e:
        raise DescribeError(f"{manifest_path}: unreadable manifest: {e}") from e
    for field, value in (("pair_count", header.pair_count), ("dim", header.dim)):
        if manifest.get(field) != value:
            raise DescribeError(
                f"{manifest_path}: manifest {field}={manifest.get(field)} "
                f"but file header says {value}"
            )
    lines += [
        f"manifest: {manifest_path}",
        f"  model_id: {manifest.get('model_id')}",
        f"  layer: {manifest.get('layer')}",
        f"  tokenizer: {manifest.get('tokenizer_class')} "
        f"(transformers {manifest.get('tokenizer_version')})",
        f"  max_tokens: {manifest.get('max_tokens')}",
    ]
    return "\n".join(lines) + "\n"
