"""Per-sentence score fusion and system-level aggregation.

The combined score of a sentence is ``alpha * f_kg + (1 - alpha) * f_bert``.
A system's score is the mean of its sentences' combined scores. Only that
interpolation depends on alpha, so sweeps compute the embedding and entity
components once per pair and reuse them for every alpha value.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Sequence

from .bertscore import sentence_bertscore
from .corpus import Corpus
from .embeddings import EmbeddingSet
from .errors import AlignmentError, KGBertScoreError, ScoringError
from .kgscore import kg_match_score

DEFAULT_ALPHA = 0.5

SYSTEM_CSV_HEADER = ("system_id", "lang_pair", "alpha", "n", "mean_f_bert", "mean_f_kg", "mean_f_kg_bert")
SENTENCE_CSV_HEADER = ("pair_id", "system_id", "lang_pair", "recall", "precision", "f_bert", "f_kg", "f_kg_bert")


@dataclass(frozen=True)
class PairComponents:
    """Alpha-independent scores of one sentence pair."""

    pair_id: str
    recall: float
    precision: float
    f_bert: float
    f_kg: float


@dataclass(frozen=True)
class SentenceScore:
    pair_id: str
    recall: float
    precision: float
    f_bert: float
    f_kg: float
    f_kg_bert: float


@dataclass(frozen=True)
class SystemReport:
    system_id: str
    lang_pair: str
    alpha: float
    n_sentences: int
    mean_f_bert: float
    mean_f_kg: float
    mean_f_kg_bert: float


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return alpha


def combine(f_kg: float, f_bert: float, alpha: float = DEFAULT_ALPHA) -> float:
    """Linear interpolation between the entity score and the embedding score.

    alpha=0 returns f_bert exactly (bitwise); alpha=1 returns f_kg exactly.
    """
    alpha = _check_alpha(alpha)
    if not (math.isfinite(f_kg) and math.isfinite(f_bert)):
        raise ValueError(f"non-finite score inputs: f_kg={f_kg}, f_bert={f_bert}")
    return alpha * f_kg + (1.0 - alpha) * f_bert


def resolve_threads(threads: int | str | None) -> int:
    """Map a thread-count setting ('auto', int, or None) to a positive int."""
    import os

    if threads is None or threads == "auto":
        return os.cpu_count() or 1
    n = int(threads)
    if n < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    return n


def compute_components(
    corpus: Corpus, embeddings: EmbeddingSet, threads: int | str | None = 1
) -> list[PairComponents]:
    """Embedding-match and entity-match scores for every pair, in corpus order.

    Pairs are independent, so they may be scored in parallel; the result
    order (and every value) is identical for any thread count.
    """
    if embeddings.pair_count != corpus.n:
        raise AlignmentError(
            f"embedding file has {embeddings.pair_count} pairs but corpus has {corpus.n}"
        )
    if not embeddings.normalized:
        raise ValueError("embeddings must be loaded with normalization for scoring")

    def score_one(k: int) -> PairComponents:
        pair = corpus[k]
        try:
            src, mt = embeddings.pairs[k]
            bs = sentence_bertscore(src, mt)
            ks = kg_match_score(pair.src_entities, pair.mt_entities)
        except KGBertScoreError:
            raise
        except Exception as e:
            raise ScoringError(f"pair {pair.pair_id!r}: {e}") from e
        return PairComponents(
            pair_id=pair.pair_id,
            recall=bs.recall,
            precision=bs.precision,
            f_bert=bs.f_bert,
            f_kg=ks.f_kg,
        )

    n_threads = resolve_threads(threads)
    if n_threads == 1 or corpus.n == 1:
        return [score_one(k) for k in range(corpus.n)]
    with ThreadPoolExecutor(max_workers=n_threads) as pool:
        return list(pool.map(score_one, range(corpus.n)))


def apply_alpha(components: Sequence[PairComponents], alpha: float) -> list[SentenceScore]:
    alpha = _check_alpha(alpha)
    return [
        SentenceScore(
            pair_id=c.pair_id,
            recall=c.recall,
            precision=c.precision,
            f_bert=c.f_bert,
            f_kg=c.f_kg,
            f_kg_bert=combine(c.f_kg, c.f_bert, alpha),
        )
        for c in components
    ]


def score_corpus(
    corpus: Corpus,
    embeddings: EmbeddingSet,
    alpha: float = DEFAULT_ALPHA,
    threads: int | str | None = 1,
) -> list[SentenceScore]:
    """Score every pair of the corpus at one alpha, in corpus order."""
    return apply_alpha(compute_components(corpus, embeddings, threads=threads), alpha)


def _mean(values: list[float]) -> float:
    # Fixed corpus-order summation for cross-run reproducibility.
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def system_scores(
    scores: Sequence[SentenceScore], corpus: Corpus, alpha: float
) -> list[SystemReport]:
    """Aggregate sentence scores into one report per (system_id, lang_pair).

    Groups appear in first-appearance corpus order; means use fixed
    corpus-order summation.
    """
    if not scores:
        raise ValueError("no sentence scores to aggregate")
    if len(scores) != corpus.n:
        raise AlignmentError(f"{len(scores)} sentence scores for a corpus of {corpus.n} pairs")
    alpha = _check_alpha(alpha)
    groups: dict[tuple[str, str], list[SentenceScore]] = {}
    for pair, score in zip(corpus, scores):
        groups.setdefault((pair.system_id, pair.lang_pair), []).append(score)
    reports = []
    for (system_id, lang_pair), members in groups.items():
        reports.append(
            SystemReport(
                system_id=system_id,
                lang_pair=lang_pair,
                alpha=alpha,
                n_sentences=len(members),
                mean_f_bert=_mean([s.f_bert for s in members]),
                mean_f_kg=_mean([s.f_kg for s in members]),
                mean_f_kg_bert=_mean([s.f_kg_bert for s in members]),
            )
        )
    return reports


def alpha_sweep(
    corpus: Corpus,
    embeddings: EmbeddingSet,
    alphas: Sequence[float],
    threads: int | str | None = 1,
) -> dict[float, list[SystemReport]]:
    """System reports for each alpha, reusing per-pair components.

    The output at any alpha is bitwise identical to a direct
    :func:`score_corpus` + :func:`system_scores` run at that alpha.
    """
    if not alphas:
        raise ValueError("alphas must be non-empty")
    alphas = [_check_alpha(a) for a in alphas]
    components = compute_components(corpus, embeddings, threads=threads)
    return {
        a: system_scores(apply_alpha(components, a), corpus, a) for a in alphas
    }


def reports_to_json(
    reports: Sequence[SystemReport],
    sentences: Sequence[SentenceScore] | None = None,
) -> str:
    """Stable-field-order JSON for one scoring run."""
    doc: dict = {"systems": [asdict(r) for r in reports]}
    if sentences is not None:
        doc["sentences"] = [asdict(s) for s in sentences]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def sweep_to_json(sweep: dict[float, list[SystemReport]]) -> str:
    doc = {
        "alphas": list(sweep),
        "sweeps": [
            {"alpha": a, "systems": [asdict(r) for r in reports]}
            for a, reports in sweep.items()
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def reports_to_csv(reports: Sequence[SystemReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SYSTEM_CSV_HEADER)
    for r in reports:
        writer.writerow(
            [r.system_id, r.lang_pair, repr(r.alpha), r.n_sentences,
             repr(r.mean_f_bert), repr(r.mean_f_kg), repr(r.mean_f_kg_bert)]
        )
    return buf.getvalue()


def sweep_to_csv(sweep: dict[float, list[SystemReport]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SYSTEM_CSV_HEADER)
    for reports in sweep.values():
        for r in reports:
            writer.writerow(
                [r.system_id, r.lang_pair, repr(r.alpha), r.n_sentences,
                 repr(r.mean_f_bert), repr(r.mean_f_kg), repr(r.mean_f_kg_bert)]
            )
    return buf.getvalue()


def sentences_to_csv(sentences: Sequence[SentenceScore], corpus: Corpus) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SENTENCE_CSV_HEADER)
    for pair, s in zip(corpus, sentences):
        writer.writerow(
            [s.pair_id, pair.system_id, pair.lang_pair, repr(s.recall),
             repr(s.precision), repr(s.f_bert), repr(s.f_kg), repr(s.f_kg_bert)]
        )
    return buf.getvalue()


def _render_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
              for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def reports_to_table(reports: Sequence[SystemReport]) -> str:
    header = list(SYSTEM_CSV_HEADER)
    rows = [
        [r.system_id, r.lang_pair, f"{r.alpha:g}", str(r.n_sentences),
         f"{r.mean_f_bert:.4f}", f"{r.mean_f_kg:.4f}", f"{r.mean_f_kg_bert:.4f}"]
        for r in reports
    ]
    return _render_table(header, rows)


def sweep_to_table(sweep: dict[float, list[SystemReport]]) -> str:
    """One row per system, one mean-combined-score column per alpha."""
    alphas = list(sweep)
    keys: dict[tuple[str, str], None] = {}
    for reports in sweep.values():
        for r in reports:
            keys.setdefault((r.system_id, r.lang_pair), None)
    by_alpha = {
        a: {(r.system_id, r.lang_pair): r for r in reports}
        for a, reports in sweep.items()
    }
    header = ["system_id", "lang_pair"] + [f"alpha={a:g}" for a in alphas]
    rows = []
    for key in keys:
        system_id, lang_pair = key
        rows.append(
            [system_id, lang_pair]
            + [f"{by_alpha[a][key].mean_f_kg_bert:.4f}" for a in alphas]
        )
    return _render_table(header, rows)
