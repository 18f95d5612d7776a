"""Command-line interface.

Subcommands:
  score      score a corpus at one alpha and report per-system means
  sweep      score at several alphas, reusing per-pair work
  correlate  Pearson correlation of system scores against human judgments
  validate   check a corpus/embeddings pair and print a summary

Exit codes: 0 success, 1 data error (bad input file, alignment, correlation
failure), 2 usage error (bad flags). All output is deterministic: the same
inputs and flags produce byte-identical output at any thread count.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .corpus import load_corpus, load_human_scores
from .embeddings import load_embeddings
from .errors import KGBertScoreError
from .metaeval import (
    correlate,
    correlation_to_csv,
    correlation_to_json,
    correlation_to_table,
)
from .scoring import (
    DEFAULT_ALPHA,
    alpha_sweep,
    apply_alpha,
    compute_components,
    reports_to_csv,
    reports_to_json,
    reports_to_table,
    sentences_to_csv,
    score_corpus,
    sweep_to_csv,
    sweep_to_json,
    sweep_to_table,
    system_scores,
)

DEFAULT_SWEEP_ALPHAS = (0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0)

THREADS_ENV_VAR = "KGB_THREADS"


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one CLI invocation."""

    command: str
    corpus_path: Path | None = None
    embeddings_path: Path | None = None
    human_scores_path: Path | None = None
    output_path: Path | None = None
    output_format: str = "table"
    alpha: float = DEFAULT_ALPHA
    alphas: tuple[float, ...] = DEFAULT_SWEEP_ALPHAS
    threads: int = 1
    per_sentence: bool = False
    metric: str = "f_kg_bert"
    lang_pairs: tuple[str, ...] | None = None


def _parse_alpha(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"alpha must be in [0, 1], got {text}")
    return value


def _parse_alphas(text: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty alpha list")
    return tuple(_parse_alpha(p) for p in parts)


def _parse_threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"threads must be a positive integer or 'auto', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"threads must be positive, got {text}")
    return value


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV_VAR)
    if env is not None:
        try:
            return _parse_threads(env.strip())
        except argparse.ArgumentTypeError:
            # A broken env var must not make every invocation unusable.
            logging.getLogger("kgbertscore").warning(
                "ignoring invalid %s=%r", THREADS_ENV_VAR, env
            )
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgbertscore",
        description="Reference-free MT evaluation from multilingual embeddings and entity links.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p: argparse.ArgumentParser, embeddings: bool = True) -> None:
        p.add_argument("--corpus", required=True, type=Path, help="corpus JSONL file")
        if embeddings:
            p.add_argument("--embeddings", required=True, type=Path, help="KGBE embedding file")
        p.add_argument("-o", "--output", type=Path, default=None,
                       help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv", "table"), default="table",
                       help="output format (default: table)")
        p.add_argument("--threads", type=_parse_threads, default=None, metavar="N|auto",
                       help=f"worker threads (default: ${THREADS_ENV_VAR} or CPU count)")

    p_score = sub.add_parser("score", help="score a corpus at one alpha")
    add_io(p_score)
    p_score.add_argument("--alpha", type=_parse_alpha, default=DEFAULT_ALPHA,
                         help="interpolation weight of the entity score (default: 0.5)")
    p_score.add_argument("--per-sentence", action="store_true",
                         help="also emit per-sentence scores")

    p_sweep = sub.add_parser("sweep", help="score at several alphas")
    add_io(p_sweep)
    p_sweep.add_argument("--alphas", type=_parse_alphas,
                         default=DEFAULT_SWEEP_ALPHAS, metavar="A1,A2,...",
                         help="comma-separated alpha grid (default: 0.0,0.2,0.4,0.5,0.6,0.8,1.0)")

    p_corr = sub.add_parser("correlate", help="correlate system scores with human judgments")
    add_io(p_corr)
    p_corr.add_argument("--human-scores", required=True, type=Path,
                        help="CSV of human system-level scores")
    p_corr.add_argument("--alpha", type=_parse_alpha, default=DEFAULT_ALPHA,
                        help="interpolation weight (default: 0.5)")
    p_corr.add_argument("--metric", choices=("f_kg_bert", "f_bert", "f_kg"),
                        default="f_kg_bert", help="which system score to correlate")
    p_corr.add_argument("--lang-pairs", type=str, default=None, metavar="LP1,LP2,...",
                        help="restrict to these language pairs (default: all in the corpus)")

    p_val = sub.add_parser("validate", help="check a corpus and optional embedding file")
    p_val.add_argument("--corpus", required=True, type=Path, help="corpus JSONL file")
    p_val.add_argument("--embeddings", type=Path, default=None, help="KGBE embedding file")

    return parser


def _write_output(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    threads = args.threads if getattr(args, "threads", None) is not None else _default_threads()
    lang_pairs = None
    if getattr(args, "lang_pairs", None):
        lang_pairs = tuple(p.strip() for p in args.lang_pairs.split(",") if p.strip())
    return RunConfig(
        command=args.command,
        corpus_path=getattr(args, "corpus", None),
        embeddings_path=getattr(args, "embeddings", None),
        human_scores_path=getattr(args, "human_scores", None),
        output_path=getattr(args, "output", None),
        output_format=getattr(args, "format", "table"),
        alpha=getattr(args, "alpha", DEFAULT_ALPHA),
        alphas=tuple(getattr(args, "alphas", DEFAULT_SWEEP_ALPHAS)),
        threads=threads,
        per_sentence=getattr(args, "per_sentence", False),
        metric=getattr(args, "metric", "f_kg_bert"),
        lang_pairs=lang_pairs,
    )


def cmd_score(cfg: RunConfig) -> str:
    corpus = load_corpus(cfg.corpus_path)
    embeddings = load_embeddings(cfg.embeddings_path)
    sentences = score_corpus(corpus, embeddings, alpha=cfg.alpha, threads=cfg.threads)
    reports = system_scores(sentences, corpus, cfg.alpha)
    if cfg.output_format == "json":
        return reports_to_json(reports, sentences if cfg.per_sentence else None)
    if cfg.output_format == "csv":
        if cfg.per_sentence:
            if cfg.output_path is None:
                raise KGBertScoreError(
                    "--per-sentence with --format csv needs --output to place the sentences file"
                )
            sibling = cfg.output_path.with_suffix(".sentences.csv")
            sibling.write_text(sentences_to_csv(sentences, corpus), encoding="utf-8")
        return reports_to_csv(reports)
    text = reports_to_table(reports)
    if cfg.per_sentence:
        rows = [
            [s.pair_id, f"{s.recall:.4f}", f"{s.precision:.4f}", f"{s.f_bert:.4f}",
             f"{s.f_kg:.4f}", f"{s.f_kg_bert:.4f}"]
            for s in sentences
        ]
        from .scoring import _render_table

        text += "\n" + _render_table(
            ["pair_id", "recall", "precision", "f_bert", "f_kg", "f_kg_bert"], rows
        )
    return text


def cmd_sweep(cfg: RunConfig) -> str:
    corpus = load_corpus(cfg.corpus_path)
    embeddings = load_embeddings(cfg.embeddings_path)
    sweep = alpha_sweep(corpus, embeddings, cfg.alphas, threads=cfg.threads)
    if cfg.output_format == "json":
        return sweep_to_json(sweep)
    if cfg.output_format == "csv":
        return sweep_to_csv(sweep)
    return sweep_to_table(sweep)


def cmd_correlate(cfg: RunConfig) -> str:
    corpus = load_corpus(cfg.corpus_path)
    embeddings = load_embeddings(cfg.embeddings_path)
    humans = load_human_scores(cfg.human_scores_path)
    sentences = score_corpus(corpus, embeddings, alpha=cfg.alpha, threads=cfg.threads)
    reports = system_scores(sentences, corpus, cfg.alpha)
    result = correlate(reports, humans, metric_name=cfg.metric, lang_pairs=cfg.lang_pairs)
    if cfg.output_format == "json":
        return correlation_to_json(result)
    if cfg.output_format == "csv":
        return correlation_to_csv(result)
    return correlation_to_table(result)


def cmd_validate(cfg: RunConfig) -> str:
    corpus = load_corpus(cfg.corpus_path)
    lines = [
        f"corpus: {cfg.corpus_path}",
        f"  pairs: {corpus.n}",
        f"  systems: {', '.join(s for s, _ in corpus.system_keys())}",
        f"  lang_pairs: {', '.join(corpus.lang_pairs())}",
    ]
    if cfg.embeddings_path is not None:
        embeddings = load_embeddings(cfg.embeddings_path)
        lines.append(f"embeddings: {cfg.embeddings_path}")
        lines.append(f"  pairs: {embeddings.pair_count}")
        lines.append(f"  dim: {embeddings.dim}")
        if embeddings.pair_count != corpus.n:
            raise KGBertScoreError(
                f"embedding file has {embeddings.pair_count} pairs but corpus has {corpus.n}"
            )
        lines.append("alignment: OK")
    lines.append("valid")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    handlers = {
        "score": cmd_score,
        "sweep": cmd_sweep,
        "correlate": cmd_correlate,
        "validate": cmd_validate,
    }
    try:
        text = handlers[cfg.command](cfg)
    except KGBertScoreError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    _write_output(text, cfg.output_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
