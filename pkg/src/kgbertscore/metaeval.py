"""System-level meta-evaluation: Pearson correlation against human judgments.

For each language pair, the metric's system scores are joined with the human
scores by system_id, and the Pearson correlation of the two vectors is the
metric's quality on that language pair. A summary mean over language pairs
completes the report.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .corpus import HumanScoreTable
from .errors import CorrelationError
from .scoring import SystemReport, _mean, _render_table

logger = logging.getLogger("kgbertscore")

VARIANCE_EPS = 1e-15

CORRELATION_CSV_HEADER = ("lang_pair", "metric", "n_systems", "pearson_r")


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation coefficient of two equal-length vectors.

    Raises CorrelationError on length mismatch, fewer than two points, or a
    zero-variance side (where r is undefined). The result is clamped to
    [-1, 1] to absorb floating-point overshoot on perfectly linear inputs.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise CorrelationError("pearson expects 1-D vectors")
    if x.shape[0] != y.shape[0]:
        raise CorrelationError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < 2:
        raise CorrelationError(f"need at least 2 points, got {x.shape[0]}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise CorrelationError("non-finite values in correlation input")
    xc = x - x.mean()
    yc = y - y.mean()
    var_x = float(xc @ xc)
    var_y = float(yc @ yc)
    if var_x <= VARIANCE_EPS or var_y <= VARIANCE_EPS:
        which = "x" if var_x <= VARIANCE_EPS else "y"
        raise CorrelationError(f"zero variance in {which}: correlation undefined")
    r = float(xc @ yc) / float(np.sqrt(var_x) * np.sqrt(var_y))
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class CorrelationRow:
    lang_pair: str
    metric: str
    n_systems: int
    pearson_r: float


@dataclass(frozen=True)
class CorrelationReport:
    rows: tuple[CorrelationRow, ...]
    mean_r: float
    n_pairs: int
    warnings: tuple[str, ...]


def correlate(
    reports: Sequence[SystemReport],
    humans: HumanScoreTable,
    metric_name: str = "f_kg_bert",
    lang_pairs: Sequence[str] | None = None,
) -> CorrelationReport:
    """Per-language-pair Pearson correlation of system scores vs human scores.

    Language pairs are auto-discovered from the reports unless given
    explicitly. Auto-discovered pairs with fewer than two joined systems are
    excluded with a warning; an explicitly requested pair that cannot be
    correlated is an error.
    """
    if metric_name not in ("f_kg_bert", "f_bert", "f_kg"):
        raise CorrelationError(f"unknown metric {metric_name!r}")
    by_pair: dict[str, list[SystemReport]] = {}
    for r in reports:
        by_pair.setdefault(r.lang_pair, []).append(r)

    explicit = lang_pairs is not None
    if explicit:
        targets = list(lang_pairs)
        missing = [lp for lp in targets if lp not in by_pair]
        if missing:
            raise CorrelationError(f"no system scores for requested lang_pair(s): {', '.join(missing)}")
    else:
        targets = list(by_pair)
    if not targets:
        raise CorrelationError("no language pairs to correlate")

    attr = {"f_kg_bert": "mean_f_kg_bert", "f_bert": "mean_f_bert", "f_kg": "mean_f_kg"}[metric_name]
    rows: list[CorrelationRow] = []
    warnings: list[str] = []
    for lp in targets:
        joined = [
            (getattr(r, attr), humans.lookup(lp, r.system_id))
            for r in by_pair[lp]
            if humans.lookup(lp, r.system_id) is not None
        ]
        if len(joined) < 2:
            msg = (f"lang_pair {lp!r}: only {len(joined)} system(s) joined with "
                   f"human scores, need 2; excluded")
            if explicit:
                raise CorrelationError(msg)
            warnings.append(msg)
            logger.warning(msg)
            continue
        metric_vec = [m for m, _ in joined]
        human_vec = [h for _, h in joined]
        rows.append(
            CorrelationRow(
                lang_pair=lp,
                metric=metric_name,
                n_systems=len(joined),
                pearson_r=pearson(metric_vec, human_vec),
            )
        )
    if not rows:
        raise CorrelationError("no language pair had enough joined systems to correlate")
    return CorrelationReport(
        rows=tuple(rows),
        mean_r=_mean([row.pearson_r for row in rows]),
        n_pairs=len(rows),
        warnings=tuple(warnings),
    )


def correlation_to_json(report: CorrelationReport) -> str:
    doc = {
        "rows": [asdict(r) for r in report.rows],
        "mean_r": report.mean_r,
        "n_pairs": report.n_pairs,
        "warnings": list(report.warnings),
    }
    import json

    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def correlation_to_csv(report: CorrelationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CORRELATION_CSV_HEADER)
    for r in report.rows:
        writer.writerow([r.lang_pair, r.metric, r.n_systems, repr(r.pearson_r)])
    writer.writerow(["mean", report.rows[0].metric, report.n_pairs, repr(report.mean_r)])
    return buf.getvalue()


def correlation_to_table(report: CorrelationReport) -> str:
    header = list(CORRELATION_CSV_HEADER)
    rows = [
        [r.lang_pair, r.metric, str(r.n_systems), f"{r.pearson_r:.4f}"]
        for r in report.rows
    ]
    rows.append(["mean", report.rows[0].metric, str(report.n_pairs), f"{report.mean_r:.4f}"])
    return _render_table(header, rows)
