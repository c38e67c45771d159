"""Evaluation reports: join a score file with a manifest and derive metrics.

The evaluator never reads audio; it is a pure function of the score
records, the manifest, and the threshold policy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .manifest import Manifest
from .metrics import (
    MetricsError,
    ScoreRecord,
    SourceRow,
    balanced_accuracy,
    best_threshold,
    compute_eer,
    per_source_metrics,
)
from .reporting import SourceTableRow, render_source_table

FORMAT_VERSION = 1


class EvaluationError(ValueError):
    pass


@dataclass
class EvalReport:
    balanced_accuracy: float
    eer_percent: float
    eer_threshold: float
    threshold_used: float
    best_sweep_threshold: float
    best_sweep_ba: float
    per_source_rows: list[SourceRow]
    coverage_missing: list[str] = field(default_factory=list)
    polarity_ok: bool = True
    n_scored: int = 0

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "balanced_accuracy": self.balanced_accuracy,
            "eer_percent": self.eer_percent,
            "eer_threshold": self.eer_threshold,
            "threshold_used": self.threshold_used,
            "best_sweep_threshold": self.best_sweep_threshold,
            "best_sweep_ba": self.best_sweep_ba,
            "n_scored": self.n_scored,
            "polarity_ok": self.polarity_ok,
            "coverage_missing": sorted(self.coverage_missing),
            "per_source": [
                {
                    "source": r.source,
                    "label": r.label,
                    "n": r.n,
                    "recall": r.recall,
                    "balanced_metric": r.balanced_metric,
                    "flag_low": r.flag_low,
                }
                for r in self.per_source_rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def render_text(self) -> str:
        lines = [
            f"balanced accuracy @ {self.threshold_used:g}: "
            f"{self.balanced_accuracy:.3f}",
            f"EER: {self.eer_percent:.2f}% (threshold {self.eer_threshold:g})",
            f"best sweep BA: {self.best_sweep_ba:.3f} "
            f"@ {self.best_sweep_threshold:g}",
        ]
        if not self.polarity_ok:
            lines.append(
                "WARNING: score polarity looks inverted "
                "(bonafide scores are not higher than spoof on average)"
            )
        if self.coverage_missing:
            lines.append(
                f"WARNING: {len(self.coverage_missing)} manifest rows unscored"
            )
        table_rows = [
            SourceTableRow(source=r.source,
                           category="pristine" if r.label == "bonafide"
                           else "generated",
                           metric=r.balanced_metric, n=r.n)
            for r in self.per_source_rows
        ]
        text = "\n".join(lines) + "\n"
        if table_rows:
            text += "\n" + render_source_table(table_rows)
        return text


def evaluate_scores(
    records: list[ScoreRecord],
    manifest: Manifest,
    threshold: float = 0.5,
) -> EvalReport:
    """Join scores against a manifest and compute the full report.

    Unknown sample ids are a hard error; manifest rows without scores are
    reported as coverage gaps.
    """
    by_id = {e.sample_id: e for e in manifest.entries}
    unknown = [r.sample_id for r in records if r.sample_id not in by_id]
    if unknown:
        raise EvaluationError(
            f"score file references unknown sample_id(s): {sorted(unknown)[:5]}"
        )
    scored_ids = {r.sample_id for r in records}
    missing = [sid for sid in by_id if sid not in scored_ids]

    ordered = sorted(records, key=lambda r: r.sample_id)
    scores = [r.score for r in ordered]
    labels = [by_id[r.sample_id].label == "bonafide" for r in ordered]
    sources = [by_id[r.sample_id].source_system for r in ordered]

    try:
        ba = balanced_accuracy(scores, labels, threshold)
        eer, eer_thr = compute_eer(scores, labels)
        sweep_thr, sweep_ba = best_threshold(scores, labels)
        rows = per_source_metrics(scores, labels, sources, threshold)
    except MetricsError as exc:
        raise EvaluationError(str(exc)) from None

    n_bona = sum(labels)
    mean_bona = sum(s for s, l in zip(scores, labels) if l) / n_bona
    mean_spoof = sum(s for s, l in zip(scores, labels) if not l) / (
        len(labels) - n_bona
    )
    return EvalReport(
        balanced_accuracy=ba,
        eer_percent=eer,
        eer_threshold=eer_thr,
        threshold_used=threshold,
        best_sweep_threshold=sweep_thr,
        best_sweep_ba=sweep_ba,
        per_source_rows=rows,
        coverage_missing=missing,
        polarity_ok=mean_bona > mean_spoof,
        n_scored=len(records),
    )
