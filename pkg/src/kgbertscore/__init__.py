"""Reference-free MT evaluation from multilingual embeddings and entity links.

A sentence pair is scored two ways: greedy token-embedding matching between
source and translation (recall, precision, F), and multiset overlap of the
entities linked in each side. The combined score interpolates the two, and
system scores are sentence means, meta-evaluated by Pearson correlation
against human judgments.
"""

from .bertscore import SentenceBertScore, sentence_bertscore, similarity_matrix
from .corpus import (
    Corpus,
    HumanScoreRow,
    HumanScoreTable,
    SentencePair,
    dump_corpus,
    load_corpus,
    load_human_scores,
    parse_corpus,
    parse_human_scores,
)
from .embeddings import (
    EmbeddingSet,
    load_embeddings,
    normalize_rows,
    read_embeddings,
    save_embeddings,
    write_embeddings,
)
from .errors import (
    AlignmentError,
    CorpusError,
    CorrelationError,
    EmbeddingError,
    HumanScoreError,
    KGBertScoreError,
    ScoringError,
)
from .kgscore import EntityMatchScore, kg_match_score
from .metaeval import CorrelationReport, CorrelationRow, correlate, pearson
from .scoring import (
    DEFAULT_ALPHA,
    PairComponents,
    SentenceScore,
    SystemReport,
    alpha_sweep,
    apply_alpha,
    combine,
    compute_components,
    score_corpus,
    system_scores,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "Corpus",
    "CorpusError",
    "CorrelationError",
    "CorrelationReport",
    "CorrelationRow",
    "DEFAULT_ALPHA",
    "EmbeddingError",
    "EmbeddingSet",
    "EntityMatchScore",
    "HumanScoreError",
    "HumanScoreRow",
    "HumanScoreTable",
    "KGBertScoreError",
    "PairComponents",
    "ScoringError",
    "SentenceBertScore",
    "SentencePair",
    "SentenceScore",
    "SystemReport",
    "alpha_sweep",
    "apply_alpha",
    "combine",
    "compute_components",
    "correlate",
    "dump_corpus",
    "kg_match_score",
    "load_corpus",
    "load_embeddings",
    "load_human_scores",
    "normalize_rows",
    "parse_corpus",
    "parse_human_scores",
    "pearson",
    "read_embeddings",
    "save_embeddings",
    "score_corpus",
    "sentence_bertscore",
    "similarity_matrix",
    "system_scores",
    "write_embeddings",
    "__version__",
]
