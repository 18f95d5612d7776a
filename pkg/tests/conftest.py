"""Shared builders for synthetic corpora and embedding files."""

from __future__ import annotations

import json

import numpy as np
import pytest

from kgbertscore import Corpus, SentencePair, write_embeddings

ENTITY_POOL = [
    "/m/02xry", "/m/0hl_6", "/m/083sl", "/m/05qv5f", "/m/0j49l",
    "/m/0chln1", "/m/01cpyy", "/m/09c7w0", "/m/0d05w3", "/m/02j71",
]


def build_corpus(
    n: int,
    systems: tuple[str, ...] = ("sysA", "sysB"),
    lang_pairs: tuple[str, ...] = ("en-zh",),
    entity_rate: float = 0.7,
    seed: int = 42,
) -> Corpus:
    """A deterministic synthetic corpus of ``n`` pairs.

    Systems and language pairs cycle; entity lists are drawn from a fixed
    pool with repeats allowed, and some sides are left empty so the
    no-entity fallback is always exercised.
    """
    rng = np.random.default_rng(seed)
    pairs = []
    for i in range(n):
        def entities() -> tuple[str, ...]:
            if rng.random() > entity_rate:
                return ()
            k = int(rng.integers(1, 5))
            return tuple(rng.choice(ENTITY_POOL, size=k, replace=True))

        pairs.append(
            SentencePair(
                pair_id=f"p{i:04d}",
                lang_pair=lang_pairs[i % len(lang_pairs)],
                system_id=systems[(i // len(lang_pairs)) % len(systems)],
                src_text=f"source sentence {i}",
                mt_text=f"translated sentence {i}",
                src_entities=entities(),
                mt_entities=entities(),
            )
        )
    return Corpus(pairs=tuple(pairs))


def build_embedding_pairs(
    n: int, dim: int = 8, max_rows: int = 6, seed: int = 42
) -> list[tuple[np.ndarray, np.ndarray]]:
    """``n`` random (src, mt) float32 matrix pairs with varying row counts."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        src = rng.normal(size=(int(rng.integers(1, max_rows + 1)), dim))
        mt = rng.normal(size=(int(rng.integers(1, max_rows + 1)), dim))
        out.append((src.astype(np.float32), mt.astype(np.float32)))
    return out


def write_corpus_file(corpus: Corpus, path) -> None:
    path.write_text(corpus.to_jsonl(), encoding="utf-8")


def write_embedding_file(pairs, path) -> None:
    path.write_bytes(write_embeddings(pairs))


@pytest.fixture
def small_corpus() -> Corpus:
    return build_corpus(12)


@pytest.fixture
def corpus_with_embeddings(tmp_path, small_corpus):
    """(corpus_path, embeddings_path, corpus) for a 12-pair setup."""
    corpus_path = tmp_path / "corpus.jsonl"
    emb_path = tmp_path / "emb.kgbe"
    write_corpus_file(small_corpus, corpus_path)
    write_embedding_file(build_embedding_pairs(small_corpus.n), emb_path)
    return corpus_path, emb_path, small_corpus


@pytest.fixture
def human_scores_file(tmp_path):
    path = tmp_path / "human.csv"
    path.write_text(
        "lang_pair,system_id,human_score\n"
        "en-zh,sysA,0.31\n"
        "en-zh,sysB,0.74\n",
        encoding="utf-8",
    )
    return path


def corpus_record(i: int = 0, **overrides) -> dict:
    record = {
        "pair_id": f"p{i}",
        "lang_pair": "en-de",
        "system_id": "sys1",
        "src_text": "a source",
        "mt_text": "eine Quelle",
        "src_entities": ["/m/02xry"],
        "mt_entities": [],
    }
    record.update(overrides)
    return record


def jsonl(*records: dict) -> str:
    return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)
