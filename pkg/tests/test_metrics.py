import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spoofkit.audio import AudioClip
from spoofkit.metrics import (
    MetricsError,
    ScoreRecord,
    SingleClassError,
    balanced_accuracy,
    best_threshold,
    compute_eer,
    confusion_counts,
    parse_score_file,
    per_source_metrics,
    reference_scorer,
    serialize_scores,
    threshold_sweep,
)


def brute_force_eer(scores, labels):
    """Exhaustive scan over all operating-point segments (oracle)."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=bool)
    bona = scores[labels]
    spoof = scores[~labels]
    thresholds = [-np.inf] + sorted(set(scores.tolist())) + [np.inf]
    points = []
    for t in thresholds:
        far = sum(1 for v in spoof if v >= t) / len(spoof)
        frr = sum(1 for v in bona if v < t) / len(bona)
        points.append((far, frr))
    for (f0, r0), (f1, r1) in zip(points, points[1:]):
        if r0 - f0 < 0 <= r1 - f1:
            if r1 - f1 == 0:
                return min(100.0 * f1, 50.0)
            denom = (r1 - r0) - (f1 - f0)
            if denom == 0:
                return min(100.0 * ((f0 + r0) / 2 + (f1 + r1) / 2) / 2, 50.0)
            a = (f0 - r0) / denom
            return min(100.0 * (f0 + a * (f1 - f0)), 50.0)
    raise AssertionError("no crossing found")


class TestBalancedAccuracy:
    def test_perfect_separation(self):
        assert balanced_accuracy([0.9, 0.8, 0.1, 0.2], [1, 1, 0, 0]) == 1.0

    def test_all_predicted_bonafide(self):
        assert balanced_accuracy([0.9, 0.9, 0.9, 0.9], [1, 1, 0, 0]) == 0.5

    def test_confusion_fixture(self):
        # TP=81, FN=19, TN=81, FP=19 -> 0.810
        scores = [1.0] * 81 + [0.0] * 19 + [0.0] * 81 + [1.0] * 19
        labels = [True] * 100 + [False] * 100
        assert balanced_accuracy(scores, labels, 0.5) == pytest.approx(0.810)

    def test_single_class_rejected(self):
        with pytest.raises(SingleClassError, match="balanced accuracy"):
            balanced_accuracy([0.5, 0.6], [1, 1])

    def test_brute_force_equivalence(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(10, 500))
            scores = rng.normal(size=n)
            labels = rng.integers(0, 2, size=n).astype(bool)
            if labels.all() or not labels.any():
                continue
            thr = float(rng.normal())
            c = confusion_counts(scores, labels, thr)
            expected = (c.tp / (c.tp + c.fn) + c.tn / (c.tn + c.fp)) / 2
            assert balanced_accuracy(scores, labels, thr) == expected

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(3)
        scores = rng.normal(size=200)
        labels = rng.integers(0, 2, size=200).astype(bool)
        assert balanced_accuracy(scores, labels, 0.1) == balanced_accuracy(
            scores ** 3, labels, 0.1 ** 3)


class TestEER:
    def test_separable_is_zero(self):
        eer, _ = compute_eer([0.9, 0.8, 0.7, 0.2, 0.1], [1, 1, 1, 0, 0])
        assert eer == 0.0

    def test_identical_scores_is_fifty(self):
        eer, _ = compute_eer([0.5] * 10, [1, 0] * 5)
        assert eer == 50.0

    def test_oracle_equivalence_gaussian(self):
        rng = np.random.default_rng(11)
        bona = rng.normal(1.0, 1.0, 5000)
        spoof = rng.normal(-1.0, 1.0, 5000)
        scores = np.concatenate([bona, spoof])
        labels = [True] * 5000 + [False] * 5000
        eer, _ = compute_eer(scores, labels)
        oracle = brute_force_eer(scores, labels)
        assert abs(eer - oracle) <= 1e-9 * max(oracle, 1e-12)

    def test_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            scores = rng.normal(size=100)
            labels = rng.integers(0, 2, size=100).astype(bool)
            if labels.all() or not labels.any():
                continue
            eer, _ = compute_eer(scores, labels)
            assert 0.0 <= eer <= 50.0 + 1e-9

    def test_symmetry_negated_scores_swapped_classes(self):
        rng = np.random.default_rng(13)
        scores = rng.normal(size=500)
        labels = rng.integers(0, 2, size=500).astype(bool)
        a, _ = compute_eer(scores, labels)
        b, _ = compute_eer(-scores, ~labels)
        assert a == pytest.approx(b, abs=1e-9)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(17)
        scores = rng.normal(size=300)
        labels = rng.integers(0, 2, size=300).astype(bool)
        a, _ = compute_eer(scores, labels)
        b, _ = compute_eer(scores ** 3, labels)
        assert a == pytest.approx(b, abs=1e-9)

    def test_single_class_rejected(self):
        with pytest.raises(SingleClassError):
            compute_eer([0.1, 0.2], [0, 0])


class TestThresholdSweep:
    def test_separable_max_is_one(self):
        sweep = threshold_sweep([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0])
        assert max(ba for _, ba in sweep) == 1.0
        thr, ba = best_threshold([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0])
        assert ba == 1.0
        assert 0.2 < thr < 0.8

    def test_monotone_transform_keeps_ba_sequence(self):
        rng = np.random.default_rng(23)
        scores = rng.normal(size=100)
        labels = rng.integers(0, 2, size=100).astype(bool)
        a = [ba for _, ba in threshold_sweep(scores, labels)]
        b = [ba for _, ba in threshold_sweep(scores ** 3, labels)]
        assert a == b

    def test_single_distinct_score_gives_three_rows(self):
        assert len(threshold_sweep([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0])) == 3


class TestPerSource:
    def test_perfect_source(self):
        scores = [0.9, 0.9, 0.1, 0.1]
        labels = [True, True, False, False]
        sources = ["librivox", "librivox", "wavenet", "wavenet"]
        rows = per_source_metrics(scores, labels, sources)
        assert all(r.balanced_metric == 1.0 for r in rows)
        assert not any(r.flag_low for r in rows)

    def test_weak_source_flagged(self):
        # spoof source at 47% recall while bonafide recall is 47% -> 0.47
        spoof_scores = [0.9] * 53 + [0.1] * 47
        bona_scores = [0.9] * 47 + [0.1] * 53
        scores = bona_scores + spoof_scores
        labels = [True] * 100 + [False] * 100
        sources = ["pod"] * 100 + ["cartesia"] * 100
        rows = {(r.source, r.label): r
                for r in per_source_metrics(scores, labels, sources)}
        row = rows[("cartesia", "spoof")]
        assert row.balanced_metric == pytest.approx(0.47)
        assert row.flag_low

    def test_hand_computed_twelve_samples(self):
        # bonafide "radio": 3 of 4 accepted; spoof "tts_a": 2 of 4 rejected;
        # spoof "tts_b": 4 of 4 rejected
        scores = [0.9, 0.8, 0.7, 0.2,
                  0.9, 0.6, 0.1, 0.2,
                  0.1, 0.2, 0.3, 0.4]
        labels = [True] * 4 + [False] * 8
        sources = ["radio"] * 4 + ["tts_a"] * 4 + ["tts_b"] * 4
        rows = {(r.source, r.label): r
                for r in per_source_metrics(scores, labels, sources)}
        bona_recall = 3 / 4
        spoof_recall = 6 / 8
        assert rows[("radio", "bonafide")].balanced_metric == \
            (3 / 4 + spoof_recall) / 2
        assert rows[("tts_a", "spoof")].balanced_metric == \
            (2 / 4 + bona_recall) / 2
        assert rows[("tts_b", "spoof")].balanced_metric == \
            (4 / 4 + bona_recall) / 2

    def test_rows_sorted_by_source(self):
        scores = [0.9, 0.1, 0.8, 0.2]
        labels = [True, False, True, False]
        sources = ["z", "b", "a", "c"]
        rows = per_source_metrics(scores, labels, sources)
        assert [r.source for r in rows] == sorted(r.source for r in rows)

    def test_same_class_same_recall_same_metric(self):
        scores = [0.9, 0.1, 0.9, 0.1, 0.1, 0.1]
        labels = [True, True, True, True, False, False]
        sources = ["s1", "s1", "s2", "s2", "x", "x"]
        rows = [r for r in per_source_metrics(scores, labels, sources)
                if r.label == "bonafide"]
        assert rows[0].balanced_metric == rows[1].balanced_metric

    def test_misaligned_sources_rejected(self):
        with pytest.raises(MetricsError):
            per_source_metrics([0.5, 0.6], [1, 0], ["a"])


class TestReferenceScorer:
    def test_low_tone_scores_high(self):
        t = np.arange(16000) / 16000.0
        clip = AudioClip(16000, 0.5 * np.sin(2 * np.pi * 100 * t))
        assert reference_scorer(clip) > 0.5

    def test_high_tone_scores_low(self):
        t = np.arange(16000) / 16000.0
        clip = AudioClip(16000, 0.5 * np.sin(2 * np.pi * 6000 * t))
        assert reference_scorer(clip) < 0.5

    def test_deterministic(self, tone_clip):
        assert reference_scorer(tone_clip) == reference_scorer(tone_clip)

    def test_empty_clip_rejected(self):
        with pytest.raises(MetricsError):
            reference_scorer(AudioClip(16000, np.zeros(0)))


class TestScoreFile:
    def test_round_trip(self):
        records = [ScoreRecord("b", 0.25), ScoreRecord("a", 0.5)]
        text = serialize_scores(records)
        again = parse_score_file(text)
        assert [r.sample_id for r in again] == ["a", "b"]
        assert serialize_scores(again) == text

    def test_nonfinite_score_rejected(self):
        with pytest.raises(MetricsError):
            ScoreRecord("a", float("nan"))

    def test_bad_header(self):
        with pytest.raises(MetricsError, match="header"):
            parse_score_file("id\tvalue\na\t0.5\n")


@settings(max_examples=50)
@given(st.lists(st.floats(min_value=-100, max_value=100,
                          allow_nan=False, allow_infinity=False),
                min_size=4, max_size=60))
def test_eer_and_ba_ranges_property(values):
    labels = [i % 2 == 0 for i in range(len(values))]
    eer, _ = compute_eer(values, labels)
    assert 0.0 <= eer <= 50.0 + 1e-9
    ba = balanced_accuracy(values, labels, 0.0)
    assert 0.0 <= ba <= 1.0
