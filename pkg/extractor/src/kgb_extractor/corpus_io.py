"""Minimal reader for the corpus JSONL interchange format.

Only the fields the extractor needs are materialized (pair_id, src_text,
mt_text); everything else is left to the scoring package, whose `validate`
command is the authority on full corpus well-formedness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusFormatError

_TEXT_FIELDS = ("pair_id", "src_text", "mt_text")


@dataclass(frozen=True)
class PairText:
    pair_id: str
    src_text: str
    mt_text: str


def read_pairs(path: str | Path) -> list[PairText]:
    """The corpus's (pair_id, src_text, mt_text) rows, in file order.

    Raises:
        CorpusFormatError: on unreadable JSON, a missing or non-string
            required field, a duplicate pair_id, or an empty file; messages
            carry the 1-based line number.
    """
    pairs: list[PairText] = []
    seen: set[str] = set()
    try:
        stream = open(path, encoding="utf-8")
    except OSError as e:
        raise CorpusFormatError(f"{path}: {e.strerror or e}") from e
    with stream:
        for lineno, raw in enumerate(stream, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"{path}: line {lineno}: malformed JSON: {e.msg}") from e
            if not isinstance(record, dict):
                raise CorpusFormatError(f"{path}: line {lineno}: expected a JSON object")
            for field in _TEXT_FIELDS:
                if field not in record:
                    raise CorpusFormatError(f"{path}: line {lineno}: missing field {field!r}")
                if not isinstance(record[field], str):
                    raise CorpusFormatError(f"{path}: line {lineno}: field {field!r} must be a string")
            if record["pair_id"] in seen:
                raise CorpusFormatError(
                    f"{path}: line {lineno}: duplicate pair_id {record['pair_id']!r}"
                )
            seen.add(record["pair_id"])
            pairs.append(PairText(record["pair_id"], record["src_text"], record["mt_text"]))
    if not pairs:
        raise CorpusFormatError(f"{path}: empty corpus")
    return pairs
