"""Fixtures: a tiny randomly initialized local encoder, corpora, helpers.

All tests run offline. The tiny model has the same interface as any hub
encoder (fast tokenizer with special-token masks, hidden_states stack) but
initializes in milliseconds from a fixed seed.
"""

from __future__ import annotations

import json
import struct

import numpy as np
import pytest
import torch
from tokenizers import Tokenizer, pre_tokenizers, processors
from tokenizers.models import WordPiece
from transformers import BertConfig, BertModel, PreTrainedTokenizerFast

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "cat", "##s", "sat", "on", "a", "mat", "report", "was", "not",
    "der", "bericht", "fehlt", "heute", "wieder",
    "本周", "佛罗里达", "没有", "报告",
    "отчет", "сегодня", "нет",
]

TINY_DIM = 16
TINY_LAYERS = 2


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("tiny-encoder")
    vocab = {w: i for i, w in enumerate(VOCAB)}
    raw = Tokenizer(WordPiece(vocab, unk_token="[UNK]"))
    raw.pre_tokenizer = pre_tokenizers.Whitespace()
    raw.post_processor = processors.TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=raw, unk_token="[UNK]", pad_token="[PAD]",
        cls_token="[CLS]", sep_token="[SEP]", mask_token="[MASK]",
    )
    tokenizer.save_pretrained(path)
    torch.manual_seed(42)
    config = BertConfig(
        vocab_size=len(VOCAB), hidden_size=TINY_DIM, num_hidden_layers=TINY_LAYERS,
        num_attention_heads=2, intermediate_size=32, max_position_embeddings=64,
    )
    BertModel(config).save_pretrained(path)
    return str(path)


def make_corpus_file(path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


def corpus_row(i: int, lang_pair="en-zh", system_id="sys1",
               src_text="the cats sat on a mat", mt_text="本周 没有 报告",
               src_entities=(), mt_entities=()) -> dict:
    return {
        "pair_id": f"p{i:03d}",
        "lang_pair": lang_pair,
        "system_id": system_id,
        "src_text": src_text,
        "mt_text": mt_text,
        "src_entities": list(src_entities),
        "mt_entities": list(mt_entities),
    }


@pytest.fixture
def small_corpus_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    make_corpus_file(path, [
        corpus_row(0, src_text="the report was not sat", mt_text="本周 佛罗里达 没有 报告"),
        corpus_row(1, src_text="a cat sat on the mat", mt_text="没有 报告"),
        corpus_row(2, src_text="the cats sat", mt_text="报告 本周"),
    ])
    return path


def walk_kgbe(path) -> tuple[int, int, list[tuple[np.ndarray, np.ndarray]]]:
    """Independent struct-level parse of a KGBE file: (dim, pair_count, pairs)."""
    data = open(path, "rb").read()
    magic, version, dim, pair_count = struct.unpack_from("<4sIII", data, 0)
    assert magic == b"KGBE" and version == 1
    offset = 16
    pairs = []
    for _ in range(pair_count):
        src_rows, mt_rows = struct.unpack_from("<II", data, offset)
        offset += 8
        src = np.frombuffer(data, dtype="<f4", count=src_rows * dim, offset=offset).reshape(src_rows, dim)
        offset += 4 * src_rows * dim
        mt = np.frombuffer(data, dtype="<f4", count=mt_rows * dim, offset=offset).reshape(mt_rows, dim)
        offset += 4 * mt_rows * dim
        pairs.append((src, mt))
    assert offset == len(data)
    return dim, pair_count, pairs
