"""Evaluation data model and ingestion.

The corpus interchange format is JSONL: one sentence pair per line with
fields ``pair_id``, ``lang_pair``, ``system_id``, ``src_text``, ``mt_text``
and optional ``src_entities`` / ``mt_entities`` (lists of knowledge-graph
entity-ID strings, default empty). Human judgments are a CSV with the exact
header ``lang_pair,system_id,human_score``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CorpusError, HumanScoreError

LANG_PAIR_RE = re.compile(r"^[a-z]{2,3}-[a-z]{2,3}$")

_REQUIRED_FIELDS = ("pair_id", "lang_pair", "system_id", "src_text", "mt_text")
_OPTIONAL_FIELDS = ("src_entities", "mt_entities")

HUMAN_SCORE_HEADER = ("lang_pair", "system_id", "human_score")


@dataclass(frozen=True)
class SentencePair:
    """One (source, machine translation) pair with its entity annotations.

    Entity IDs are opaque strings (e.g. ``/m/02xry``); ordered lists, not
    sets, so duplicate annotations survive the round trip.
    """

    pair_id: str
    lang_pair: str
    system_id: str
    src_text: str
    mt_text: str
    src_entities: tuple[str, ...] = ()
    mt_entities: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.pair_id:
            raise ValueError("pair_id must be a non-empty string")
        if not LANG_PAIR_RE.match(self.lang_pair):
            raise ValueError(
                f"lang_pair {self.lang_pair!r} does not match 'xx-yy' "
                "(2-3 lowercase letters per side)"
            )
        if not self.system_id:
            raise ValueError("system_id must be a non-empty string")
        for side, entities in (("src", self.src_entities), ("mt", self.mt_entities)):
            for e in entities:
                if not isinstance(e, str) or not e:
                    raise ValueError(f"{side}_entities contains a non-string or empty entry: {e!r}")

    def to_json(self) -> str:
        record = {
            "pair_id": self.pair_id,
            "lang_pair": self.lang_pair,
            "system_id": self.system_id,
            "src_text": self.src_text,
            "mt_text": self.mt_text,
            "src_entities": list(self.src_entities),
            "mt_entities": list(self.mt_entities),
        }
        return json.dumps(record, ensure_ascii=False)


@dataclass(frozen=True)
class Corpus:
    """An ordered, immutable collection of sentence pairs.

    Order is the canonical alignment key for embedding files: pair ``i``
    corresponds to record ``i`` of the embedding file.
    """

    pairs: tuple[SentencePair, ...]

    @property
    def n(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[SentencePair]:
        return iter(self.pairs)

    def __getitem__(self, i: int) -> SentencePair:
        return self.pairs[i]

    def system_keys(self) -> list[tuple[str, str]]:
        """Distinct (system_id, lang_pair) keys in first-appearance order."""
        seen: dict[tuple[str, str], None] = {}
        for p in self.pairs:
            seen.setdefault((p.system_id, p.lang_pair), None)
        return list(seen)

    def lang_pairs(self) -> list[str]:
        seen: dict[str, None] = {}
        for p in self.pairs:
            seen.setdefault(p.lang_pair, None)
        return list(seen)

    def to_jsonl(self) -> str:
        return "".join(p.to_json() + "\n" for p in self.pairs)


def _pair_from_record(record: dict) -> SentencePair:
    if not isinstance(record, dict):
        raise ValueError(f"expected a JSON object, got {type(record).__name__}")
    unknown = set(record) - set(_REQUIRED_FIELDS) - set(_OPTIONAL_FIELDS)
    if unknown:
        raise ValueError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = [f for f in _REQUIRED_FIELDS if f not in record]
    if missing:
        raise ValueError(f"missing required field(s): {', '.join(missing)}")
    for f in _REQUIRED_FIELDS:
        if not isinstance(record[f], str):
            raise ValueError(f"field {f!r} must be a string")
    for f in _OPTIONAL_FIELDS:
        if f in record and not isinstance(record[f], list):
            raise ValueError(f"field {f!r} must be a list of entity-ID strings")
    return SentencePair(
        pair_id=record["pair_id"],
        lang_pair=record["lang_pair"],
        system_id=record["system_id"],
        src_text=record["src_text"],
        mt_text=record["mt_text"],
        src_entities=tuple(record.get("src_entities", ())),
        mt_entities=tuple(record.get("mt_entities", ())),
    )


def parse_corpus(stream: Iterable[str] | str) -> Corpus:
    """Parse line-delimited JSON into a :class:`Corpus`.

    Accepts an iterable of lines or a single string; LF and CRLF line
    endings both work. Blank lines are skipped. Line order is preserved.

    Raises:
        CorpusError: on malformed JSON (with the 1-based line number),
            a duplicate pair_id, a missing required field, or an empty stream.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    pairs: list[SentencePair] = []
    seen_ids: set[str] = set()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusError(f"line {lineno}: malformed JSON: {e.msg}") from e
        try:
            pair = _pair_from_record(record)
        except ValueError as e:
            raise CorpusError(f"line {lineno}: {e}") from e
        if pair.pair_id in seen_ids:
            raise CorpusError(f"line {lineno}: duplicate pair_id {pair.pair_id!r}")
        seen_ids.add(pair.pair_id)
        pairs.append(pair)
    if not pairs:
        raise CorpusError("empty corpus: no records found")
    return Corpus(pairs=tuple(pairs))


def load_corpus(path: str | Path) -> Corpus:
    """Read and parse a corpus JSONL file."""
    try:
        with open(path, encoding="utf-8") as f:
            return parse_corpus(f)
    except CorpusError as e:
        raise CorpusError(f"{path}: {e}") from e


def dump_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(corpus.to_jsonl())


@dataclass(frozen=True)
class HumanScoreRow:
    lang_pair: str
    system_id: str
    human_score: float


@dataclass(frozen=True)
class HumanScoreTable:
    """Human judgments keyed by (lang_pair, system_id).

    Scores are kept on whatever affine scale the source used (raw DA,
    z-scores, ...); Pearson correlation is invariant to that choice.
    """

    rows: tuple[HumanScoreRow, ...]
    _index: dict[tuple[str, str], float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "_index",
            {(r.lang_pair, r.system_id): r.human_score for r in self.rows},
        )

    def lookup(self, lang_pair: str, system_id: str) -> float | None:
        return self._index.get((lang_pair, system_id))

    def lang_pairs(self) -> list[str]:
        seen: dict[str, None] = {}
        for r in self.rows:
            seen.setdefault(r.lang_pair, None)
        return list(seen)

    def __len__(self) -> int:
        return len(self.rows)


def parse_human_scores(stream: Iterable[str] | str) -> HumanScoreTable:
    """Parse a human-judgment CSV with header ``lang_pair,system_id,human_score``.

    Raises:
        HumanScoreError: on a wrong header, a non-numeric or non-finite
            score, or a duplicated (lang_pair, system_id) key.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise HumanScoreError("empty human-score file") from None
    if tuple(h.strip() for h in header) != HUMAN_SCORE_HEADER:
        raise HumanScoreError(
            f"bad header {','.join(header)!r}, expected {','.join(HUMAN_SCORE_HEADER)!r}"
        )
    rows: list[HumanScoreRow] = []
    seen: set[tuple[str, str]] = set()
    for lineno, record in enumerate(reader, start=2):
        if not record or (len(record) == 1 and not record[0].strip()):
            continue
        if len(record) != 3:
            raise HumanScoreError(f"line {lineno}: expected 3 fields, got {len(record)}")
        lang_pair, system_id, raw_score = (v.strip() for v in record)
        try:
            score = float(raw_score)
        except ValueError:
            raise HumanScoreError(f"line {lineno}: non-numeric score {raw_score!r}") from None
        if not math.isfinite(score):
            raise HumanScoreError(f"line {lineno}: non-finite score {raw_score!r}")
        key = (lang_pair, system_id)
        if key in seen:
            raise HumanScoreError(f"line {lineno}: duplicate key {lang_pair},{system_id}")
        seen.add(key)
        rows.append(HumanScoreRow(lang_pair, system_id, score))
    return HumanScoreTable(rows=tuple(rows))


def load_human_scores(path: str | Path) -> HumanScoreTable:
    try:
        with open(path, encoding="utf-8", newline="") as f:
            return parse_human_scores(f)
    except HumanScoreError as e:
        raise HumanScoreError(f"{path}: {e}") from e
