"""Score-level metrics: balanced accuracy, EER, sweeps, per-source rows.

Score polarity is fixed package-wide: higher score means more likely
bonafide.  The bonafide class is the positive class everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .audio import AudioClip

LOW_METRIC_THRESHOLD = 0.60  # rows at or below this are flagged


class MetricsError(ValueError):
    pass


class SingleClassError(MetricsError):
    pass


@dataclass(frozen=True)
class ScoreRecord:
    sample_id: str
    score: float

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise MetricsError(f"non-finite score for {self.sample_id!r}")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def _as_arrays(scores: Sequence[float], labels: Sequence[bool]):
    s = np.asarray(scores, dtype=np.float64)
    y = np.asarray(labels, dtype=bool)
    if s.shape != y.shape or s.ndim != 1:
        raise MetricsError("scores and labels must be equal-length 1-D sequences")
    if not np.all(np.isfinite(s)):
        raise MetricsError("scores must be finite")
    return s, y


def _require_both_classes(y: np.ndarray, what: str):
    if not (y.any() and (~y).any()):
        raise SingleClassError(f"{what} undefined for single-class input")


def confusion_counts(scores, labels, threshold: float) -> ConfusionCounts:
    """Count decisions at a threshold; bonafide iff score >= threshold."""
    s, y = _as_arrays(scores, labels)
    pred = s >= threshold
    return ConfusionCounts(
        tp=int(np.sum(pred & y)),
        tn=int(np.sum(~pred & ~y)),
        fp=int(np.sum(pred & ~y)),
        fn=int(np.sum(~pred & y)),
    )


def balanced_accuracy(scores, labels, threshold: float = 0.5) -> float:
    """(TPR + TNR) / 2 at a fixed threshold."""
    s, y = _as_arrays(scores, labels)
    _require_both_classes(y, "balanced accuracy")
    c = confusion_counts(s, y, threshold)
    tpr = c.tp / (c.tp + c.fn)
    tnr = c.tn / (c.tn + c.fp)
    return (tpr + tnr) / 2.0


def _operating_points(s: np.ndarray, y: np.ndarray):
    """FAR/FRR at every candidate threshold, with -inf/+inf sentinels.

    FAR(t) = fraction of spoof with score >= t, FRR(t) = fraction of
    bonafide with score < t; both are monotone in t.
    """
    bona = np.sort(s[y])
    spoof = np.sort(s[~y])
    thr = np.concatenate([[-np.inf], np.unique(s), [np.inf]])
    far = 1.0 - np.searchsorted(spoof, thr, side="left") / len(spoof)
    frr = np.searchsorted(bona, thr, side="left") / len(bona)
    return thr, far, frr


def compute_eer(scores, labels) -> tuple[float, float]:
    """Equal error rate (percent) and the threshold at the crossing.

    Operating points are swept over all observed scores; the FAR/FRR
    crossing is located by linear interpolation between adjacent points.
    A tie plateau spanning the crossing yields the plateau midpoint of
    (FAR + FRR) / 2.  Worse-than-chance crossings (possible with inverted
    score polarity) are reported as 50.0, the chance level.
    """
    s, y = _as_arrays(scores, labels)
    _require_both_classes(y, "EER")
    thr, far, frr = _operating_points(s, y)
    diff = frr - far
    # diff[0] = -1 at -inf and diff[-1] = +1 at +inf, so a crossing exists.
    i = int(np.argmax(diff >= 0.0))
    if diff[i] == 0.0:
        return min(100.0 * float(far[i]), 50.0), float(thr[i])
    f0, f1 = far[i - 1], far[i]
    r0, r1 = frr[i - 1], frr[i]
    denom = (r1 - r0) - (f1 - f0)
    if denom == 0.0:
        eer = ((f0 + r0) / 2.0 + (f1 + r1) / 2.0) / 2.0
        a = 0.5
    else:
        a = (f0 - r0) / denom
        eer = f0 + a * (f1 - f0)
    t0, t1 = thr[i - 1], thr[i]
    if not np.isfinite(t0):
        threshold = float(t1)
    elif not np.isfinite(t1):
        threshold = float(t0)
    else:
        threshold = float(t0 + a * (t1 - t0))
    return min(100.0 * float(eer), 50.0), threshold


def threshold_sweep(scores, labels) -> list[tuple[float, float]]:
    """Balanced accuracy at every operating point.

    Thresholds are the midpoints between consecutive distinct scores plus
    -inf/+inf sentinels; with a single distinct score the score itself is
    kept so the sweep always has at least three rows.
    """
    s, y = _as_arrays(scores, labels)
    _require_both_classes(y, "threshold sweep")
    uniq = np.unique(s)
    if len(uniq) == 1:
        mids = uniq
    else:
        mids = (uniq[:-1] + uniq[1:]) / 2.0
    thresholds = np.concatenate([[-np.inf], mids, [np.inf]])
    return [(float(t), balanced_accuracy(s, y, t)) for t in thresholds]


def best_threshold(scores, labels) -> tuple[float, float]:
    """(threshold, BA) of the sweep argmax; first maximum wins."""
    sweep = threshold_sweep(scores, labels)
    return max(sweep, key=lambda row: row[1])


@dataclass(frozen=True)
class SourceRow:
    source: str
    label: str
    n: int
    recall: float
    balanced_metric: float
    flag_low: bool


def per_source_metrics(
    scores: Sequence[float],
    labels: Sequence[bool],
    sources: Sequence[str],
    threshold: float = 0.5,
) -> list[SourceRow]:
    """Per-source balanced metric at a global threshold.

    For a source of class c the metric pairs that source's recall with the
    recall of the entire opposite class, mirroring per-class balancing at
    source granularity.  Plain per-source recall is also reported.
    """
    s, y = _as_arrays(scores, labels)
    _require_both_classes(y, "per-source metrics")
    if len(sources) != len(s):
        raise MetricsError("sources must align with scores")
    pred = s >= threshold
    bona_recall = float(np.mean(pred[y]))
    spoof_recall = float(np.mean(~pred[~y]))

    groups: dict[tuple[str, str], list[int]] = {}
    for i, src in enumerate(sources):
        key = (src, "bonafide" if y[i] else "spoof")
        groups.setdefault(key, []).append(i)

    rows = []
    for (src, label) in sorted(groups):
        idx = np.asarray(groups[(src, label)])
        if label == "bonafide":
            recall = float(np.mean(pred[idx]))
            metric = (recall + spoof_recall) / 2.0
        else:
            recall = float(np.mean(~pred[idx]))
            metric = (recall + bona_recall) / 2.0
        rows.append(SourceRow(
            source=src,
            label=label,
            n=len(idx),
            recall=recall,
            balanced_metric=metric,
            flag_low=metric <= LOW_METRIC_THRESHOLD,
        ))
    return rows


# --- reference backend ----------------------------------------------------

def reference_scorer(clip: AudioClip, split_hz: float = 4000.0) -> float:
    """Heuristic smoke-test score from high-band spectral energy.

    Maps the fraction of energy above `split_hz` to (0, 1) with higher
    meaning more bonafide-like.  A sanity backend, not a real detector.
    """
    x = clip.samples
    if len(x) == 0:
        raise MetricsError("cannot score an empty clip")
    spectrum = np.abs(np.fft.rfft(x)) ** 2
    total = float(np.sum(spectrum))
    if total == 0.0:
        ratio = 0.0
    else:
        freqs = np.fft.rfftfreq(len(x), d=1.0 / clip.sample_rate_hz)
        ratio = float(np.sum(spectrum[freqs > split_hz]) / total)
    return 0.01 + 0.98 * (1.0 - ratio)


# --- score file I/O -------------------------------------------------------

SCORE_HEADER = ("sample_id", "score")


def parse_score_file(text: str) -> list[ScoreRecord]:
    records = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if not seen_header:
            if tuple(fields) != SCORE_HEADER:
                raise MetricsError(
                    f"line {lineno}: bad header, expected {list(SCORE_HEADER)}"
                )
            seen_header = True
            continue
        if len(fields) != 2:
            raise MetricsError(f"line {lineno}: expected 2 columns")
        try:
            records.append(ScoreRecord(fields[0], float(fields[1])))
        except ValueError as exc:
            raise MetricsError(f"line {lineno}: {exc}") from None
    if not seen_header:
        raise MetricsError("missing header line")
    return records


def serialize_scores(records: Iterable[ScoreRecord]) -> str:
    lines = ["\t".join(SCORE_HEADER)]
    for r in sorted(records, key=lambda r: r.sample_id):
        lines.append(f"{r.sample_id}\t{r.score!r}")
    return "\n".join(lines) + "\n"
