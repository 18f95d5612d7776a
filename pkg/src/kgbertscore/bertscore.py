"""Greedy embedding-matching scores for one sentence pair.

Recall is the mean, over source tokens, of each token's best cosine match
among translation tokens; precision swaps the roles; F is their harmonic
mean. "Greedy" means independent row/column maxima of the similarity
matrix, not an assignment problem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Below this, precision + recall is treated as zero and F is defined as 0:
# the harmonic mean is undefined there, and 0 is the conservative score.
F_DENOM_EPS = 1e-12


@dataclass(frozen=True)
class SentenceBertScore:
    recall: float
    precision: float
    f_bert: float


def similarity_matrix(src: np.ndarray, mt: np.ndarray) -> np.ndarray:
    """Pairwise inner products, entry (i, j) = src row i . mt row j.

    Inputs must share their embedding dimension and be unit-row-normalized
    for the entries to be cosines. Computed in double precision.
    """
    src = np.asarray(src, dtype=np.float64)
    mt = np.asarray(mt, dtype=np.float64)
    if src.ndim != 2 or mt.ndim != 2:
        raise ValueError("similarity_matrix expects 2-D matrices")
    if src.shape[1] != mt.shape[1]:
        raise ValueError(f"dimension mismatch: src dim {src.shape[1]} != mt dim {mt.shape[1]}")
    return src @ mt.T


def _mean(values: np.ndarray) -> float:
    # Fixed left-to-right summation: bitwise reproducible across runs and
    # thread counts.
    total = 0.0
    for v in values.tolist():
        total += v
    return total / values.shape[0]


def sentence_bertscore(src: np.ndarray, mt: np.ndarray) -> SentenceBertScore:
    """Recall, precision, and F for one sentence pair.

    Both matrices must be non-empty, unit-row-normalized, and share dim.
    """
    if np.asarray(src).size == 0 or np.asarray(mt).size == 0:
        raise ValueError("empty embedding matrix")
    sim = similarity_matrix(src, mt)
    recall = _mean(sim.max(axis=1))
    precision = _mean(sim.max(axis=0))
    denom = precision + recall
    f_bert = 2.0 * precision * recall / denom if denom > F_DENOM_EPS else 0.0
    return SentenceBertScore(recall=recall, precision=precision, f_bert=f_bert)
