"""Tests for agreement metrics, the split protocol and cross-validation."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from helpers import brute_force_fleiss

from trend_typer import (
    CLASSES,
    COMMITTEE,
    Corpus,
    Label,
    MetricError,
    Representation,
    SplitError,
    UnlabeledTrendError,
    build_report,
    cohen_kappa,
    confusion_matrix,
    cross_validate,
    evaluate,
    fleiss_kappa,
    majority_vote,
    ratings_matrix,
    split_train_test,
    train_one_vs_all,
)

N, OE, M, C = CLASSES


def _embedded(block: list[list[int]]) -> np.ndarray:
    """A 2x2 table placed in the top-left of an otherwise empty 4x4 matrix."""
    matrix = np.zeros((4, 4), dtype=int)
    matrix[:2, :2] = block
    return matrix


class TestCohenKappa:
    """Tests for cohen_kappa."""

    def test_textbook_table(self) -> None:
        """Test the 2x2 table with kappa 0.4."""
        assert cohen_kappa(_embedded([[40, 10], [20, 30]])) == pytest.approx(0.4, abs=1e-12)

    def test_independence_table(self) -> None:
        """Test that independent raters score 0."""
        assert cohen_kappa(_embedded([[25, 25], [25, 25]])) == pytest.approx(0.0, abs=1e-12)

    def test_diagonal_tables(self) -> None:
        """Test that perfect agreement scores 1."""
        assert cohen_kappa(np.diag([5, 3, 1, 9])) == 1.0
        assert cohen_kappa(np.diag([0, 7, 0, 0])) == 1.0

    def test_constant_predictor(self) -> None:
        """Test that always predicting the majority scores kappa 0."""
        gold = [OE] * 616 + [M] * 251 + [N] * 142 + [C] * 27
        report = build_report(confusion_matrix(gold, [OE] * len(gold)))
        assert report.accuracy == pytest.approx(0.595, abs=5e-4)
        assert report.cohen_kappa == pytest.approx(0.0, abs=1e-12)
        assert set(report.empty_prediction_classes) == {N, M, C}
        assert report.per_class_precision[N] == 0.0

    def test_empty_matrix(self) -> None:
        """Test that an all-zero matrix is an error."""
        with pytest.raises(MetricError):
            cohen_kappa(np.zeros((4, 4)))


class TestReports:
    """Tests for confusion_matrix and build_report."""

    def test_confusion_rows_are_gold(self) -> None:
        """Test the row/column convention."""
        matrix = confusion_matrix([N, N, M], [N, OE, M])
        assert matrix[0, 0] == 1
        assert matrix[0, 1] == 1
        assert matrix[2, 2] == 1
        assert matrix.sum() == 3

    def test_length_mismatch(self) -> None:
        """Test that gold and predictions must align."""
        with pytest.raises(MetricError):
            confusion_matrix([N], [N, M])

    def test_precision(self) -> None:
        """Test per-class precision from columns."""
        report = build_report(confusion_matrix([N, OE, OE, M, C], [N, N, OE, M, C]))
        assert report.per_class_precision[N] == 0.5
        assert report.per_class_precision[OE] == 1.0
        assert report.accuracy == 0.8

    def test_report_dict(self) -> None:
        """Test the JSON shape of a report."""
        data = build_report(np.diag([1, 1, 1, 1])).to_dict()
        assert set(data) == {"accuracy", "kappa", "precision", "confusion", "empty_precision"}
        assert data["precision"]["news"] == 1.0


class TestFleissKappa:
    """Tests for fleiss_kappa."""

    def test_systematic_disagreement(self) -> None:
        """Test four items each split 2-1 between two categories."""
        assert fleiss_kappa([[2, 1]] * 4, 3) == pytest.approx(-0.5, abs=1e-12)

    def test_matches_pairwise_oracle(self) -> None:
        """Test against explicit rater pairs on every small instance."""
        labels = (N, OE, M)
        for items in range(1, 4):
            for raters in (2, 3):
                per_item = list(itertools.combinations_with_replacement(labels, raters))
                for annotations in itertools.product(per_item, repeat=items):
                    expected = brute_force_fleiss(annotations)
                    actual = fleiss_kappa(ratings_matrix(annotations), raters)
                    assert actual == pytest.approx(expected, abs=1e-12)

    def test_random_instances_up_to_six_items(self) -> None:
        """Test random labellings of up to six items against the oracle."""
        rng = np.random.default_rng(3)
        for _ in range(300):
            items = int(rng.integers(1, 7))
            raters = int(rng.integers(2, 6))
            annotations = [
                [CLASSES[int(k)] for k in rng.integers(0, 4, size=raters)] for _ in range(items)
            ]
            expected = brute_force_fleiss(annotations)
            assert fleiss_kappa(ratings_matrix(annotations), raters) == pytest.approx(
                expected, abs=1e-12
            )

    def test_row_sum_mismatch(self) -> None:
        """Test that every item needs the same number of ratings."""
        with pytest.raises(MetricError):
            fleiss_kappa([[2, 1], [1, 1]], 3)

    def test_one_rater(self) -> None:
        """Test that agreement needs at least two raters."""
        with pytest.raises(MetricError):
            fleiss_kappa([[1, 0]], 1)

    def test_majority_vote(self) -> None:
        """Test majority aggregation with the class-order tie-break."""
        assert majority_vote([M, M, N]) is M
        assert majority_vote([C, OE, N]) is N


class TestSplitTrainTest:
    """Tests for split_train_test."""

    def test_full_sized_protocol(self) -> None:
        """Test 600/436 partitions over ten repeats."""
        splits = split_train_test(range(1036), 600, 10, seed=42)
        assert len(splits) == 10
        for split in splits:
            assert len(split.train) == 600
            assert len(split.test) == 436
            assert set(split.train).isdisjoint(split.test)
            assert set(split.train) | set(split.test) == set(range(1036))

    def test_deterministic(self) -> None:
        """Test identical partitions for one seed and different ones otherwise."""
        assert split_train_test(range(50), 30, 3, 1) == split_train_test(range(50), 30, 3, 1)
        assert split_train_test(range(50), 30, 1, 1) != split_train_test(range(50), 30, 1, 2)

    def test_train_size_too_large(self) -> None:
        """Test that the training split must leave a test set."""
        with pytest.raises(SplitError):
            split_train_test(range(10), 10, 1)


class TestEvaluate:
    """Tests for evaluate and cross_validate."""

    def test_single_model_and_committee(self, synthetic_corpus: Corpus) -> None:
        """Test scoring one model and a social+bow committee."""
        social = train_one_vs_all(synthetic_corpus, Representation.SOCIAL)
        bow = train_one_vs_all(synthetic_corpus, Representation.BOW)
        alone = evaluate(social, list(synthetic_corpus))
        together = evaluate([social, bow], list(synthetic_corpus))
        assert sum(map(sum, alone.confusion)) == len(synthetic_corpus)
        assert sum(map(sum, together.confusion)) == len(synthetic_corpus)
        assert alone.accuracy >= 0.9

    def test_unlabeled_test_trend(self, synthetic_corpus: Corpus, small_corpus: Corpus) -> None:
        """Test that gold labels are required."""
        model = train_one_vs_all(small_corpus)
        trend = synthetic_corpus.trends[0]
        unlabeled = type(trend)(trend.topic, trend.tweets, None)
        with pytest.raises(UnlabeledTrendError):
            evaluate(model, [unlabeled])

    def test_cross_validate_both(self, synthetic_corpus: Corpus) -> None:
        """Test the split protocol with both representations and the committee."""
        reports = cross_validate(
            synthetic_corpus, "both", seed=1, train_size=30, repeats=3, workers=2
        )
        assert set(reports) == {"social", "bow", COMMITTEE}
        social = reports["social"]
        assert len(social.per_repeat) == 3
        assert sum(map(sum, social.pooled.confusion)) == 3 * (len(synthetic_corpus) - 30)
        assert social.baselines["uniform_chance"] == 0.25
        assert social.accuracy > social.baselines["majority_class"]
        assert social.to_dict()["pooled"]["accuracy"] == social.pooled.accuracy

    def test_cross_validate_deterministic(self, synthetic_corpus: Corpus) -> None:
        """Test identical reports across runs and worker counts."""
        first = cross_validate(synthetic_corpus, seed=4, train_size=30, repeats=2)
        second = cross_validate(synthetic_corpus, seed=4, train_size=30, repeats=2, workers=2)
        assert first["social"].to_dict() == second["social"].to_dict()

    def test_label_order(self) -> None:
        """Test that the four classes keep their fixed order."""
        assert [label.value for label in CLASSES] == [
            Label.NEWS.value,
            "ongoing_event",
            "meme",
            "commemorative",
        ]
