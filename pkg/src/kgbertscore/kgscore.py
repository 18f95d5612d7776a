"""Knowledge-graph entity matching score for one sentence pair.

Entities are compared by exact ID string equality only: the point of
shared multilingual knowledge-graph IDs is that the same entity carries
the same ID in every language. Duplicates use min-count (multiset)
semantics, which reduces to plain set intersection on duplicate-free
lists and caps credit for repeated entities.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class EntityMatchScore:
    f_kg: float
    matched: int
    source_count: int


def kg_match_score(
    src_entities: Sequence[str], mt_entities: Sequence[str]
) -> EntityMatchScore:
    """Fraction of source entity IDs that also appear on the MT side.

    ``matched`` counts multiset intersection: each source occurrence of an
    ID matches at most one MT occurrence. A source with no entities scores
    1 by definition. Unmatched MT-side entities carry no penalty; the score
    normalizes by the source count only. Total function, never raises.
    """
    source_count = len(src_entities)
    if source_count == 0:
        return EntityMatchScore(f_kg=1.0, matched=0, source_count=0)
    mt_counts = Counter(mt_entities)
    matched = sum(min(n, mt_counts[e]) for e, n in Counter(src_entities).items())
    return EntityMatchScore(
        f_kg=matched / source_count, matched=matched, source_count=source_count
    )
