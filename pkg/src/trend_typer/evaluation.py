"""Evaluation metrics, annotator agreement and the repeated random-split protocol."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence, Sized
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from trend_typer.classifier import (
    DEFAULT_C,
    MarginReport,
    OneVsAllModel,
    committee_predict,
    fit_one_vs_all,
    margins,
    margins_for_vector,
)
from trend_typer.exceptions import (
    EmptyCommitteeError,
    MetricError,
    SplitError,
    UnlabeledTrendError,
)
from trend_typer.features import extract_corpus_features
from trend_typer.models import CLASSES, Corpus, Label, Representation, TrendingTopic
from trend_typer.text import build_vocabulary, tf_vector

logger = logging.getLogger(__name__)

DEFAULT_TRAIN_SIZE = 600
DEFAULT_REPEATS = 10
COMMITTEE = "committee"

_POSITION = {label: position for position, label in enumerate(CLASSES)}


@dataclass(frozen=True)
class EvalReport:
    """Agreement between gold labels and predictions on one test set."""

    accuracy: float
    cohen_kappa: float
    per_class_precision: Mapping[Label, float]
    confusion: tuple[tuple[int, ...], ...]
    # Classes never predicted; their precision is reported as 0.
    empty_prediction_classes: tuple[Label, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "accuracy": self.accuracy,
            "kappa": self.cohen_kappa,
            "precision": {label.value: self.per_class_precision[label] for label in CLASSES},
            "confusion": [list(row) for row in self.confusion],
            "empty_precision": [label.value for label in self.empty_prediction_classes],
        }


@dataclass(frozen=True)
class CrossValidationReport:
    """Metrics averaged over repeated splits, plus pooled and baseline figures."""

    accuracy: float
    cohen_kappa: float
    per_class_precision: Mapping[Label, float]
    confusion: tuple[tuple[int, ...], ...]
    per_repeat: tuple[EvalReport, ...]
    pooled: EvalReport
    baselines: Mapping[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "accuracy": self.accuracy,
            "kappa": self.cohen_kappa,
            "precision": {label.value: self.per_class_precision[label] for label in CLASSES},
            "confusion": [list(row) for row in self.confusion],
            "per_repeat": [report.to_dict() for report in self.per_repeat],
            "pooled": self.pooled.to_dict(),
            "baselines": dict(self.baselines),
        }


@dataclass(frozen=True)
class Split:
    """Index partition of a corpus into training and test trends."""

    train: tuple[int, ...]
    test: tuple[int, ...]


# --- Agreement metrics ---


def confusion_matrix(gold: Sequence[Label], predicted: Sequence[Label]) -> np.ndarray:
    """4x4 counts, rows = gold class, columns = predicted class."""
    if len(gold) != len(predicted):
        raise MetricError(f"{len(gold)} gold labels but {len(predicted)} predictions")
    matrix = np.zeros((len(CLASSES), len(CLASSES)), dtype=np.int64)
    for truth, guess in zip(gold, predicted):
        matrix[_POSITION[truth], _POSITION[guess]] += 1
    return matrix


def _as_square(confusion: np.ndarray | Sequence[Sequence[int]]) -> np.ndarray:
    matrix = np.asarray(confusion, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise MetricError(f"Confusion matrix must be square, got shape {matrix.shape}")
    if (matrix < 0).any():
        raise MetricError("Confusion counts must be non-negative")
    if matrix.sum() < 1:
        raise MetricError("Confusion matrix is empty")
    return matrix


def observed_agreement(confusion: np.ndarray | Sequence[Sequence[int]]) -> float:
    """P_0: fraction of items on the diagonal (accuracy)."""
    matrix = _as_square(confusion)
    return float(np.trace(matrix) / matrix.sum())


def chance_agreement(confusion: np.ndarray | Sequence[Sequence[int]]) -> float:
    """P_c: agreement expected from the row and column marginals."""
    matrix = _as_square(confusion)
    total = matrix.sum()
    return float((matrix.sum(axis=1) / total) @ (matrix.sum(axis=0) / total))


def cohen_kappa(confusion: np.ndarray | Sequence[Sequence[int]]) -> float:
    """Cohen's kappa (P_0 - P_c) / (1 - P_c).

    Raises:
        MetricError: If the matrix is empty, or P_c = 1 without perfect agreement
    """
    p_observed = observed_agreement(confusion)
    p_chance = chance_agreement(confusion)
    if p_chance == 1.0:
        if p_observed == 1.0:
            return 1.0
        raise MetricError("Kappa is undefined when chance agreement is 1")
    return (p_observed - p_chance) / (1.0 - p_chance)


def build_report(confusion: np.ndarray | Sequence[Sequence[int]]) -> EvalReport:
    """Accuracy, kappa and per-class precision of a 4x4 confusion matrix."""
    matrix = np.asarray(confusion, dtype=np.int64)
    if matrix.shape != (len(CLASSES), len(CLASSES)):
        raise MetricError(f"Expected a {len(CLASSES)}x{len(CLASSES)} matrix, got {matrix.shape}")

    column_sums = matrix.sum(axis=0)
    precision: dict[Label, float] = {}
    empty: list[Label] = []
    for position, label in enumerate(CLASSES):
        if column_sums[position] == 0:
            precision[label] = 0.0
            empty.append(label)
        else:
            precision[label] = float(matrix[position, position] / column_sums[position])

    return EvalReport(
        accuracy=observed_agreement(matrix),
        cohen_kappa=cohen_kappa(matrix),
        per_class_precision=precision,
        confusion=tuple(tuple(int(v) for v in row) for row in matrix),
        empty_prediction_classes=tuple(empty),
    )


def fleiss_kappa(ratings: np.ndarray | Sequence[Sequence[int]], raters_per_item: int) -> float:
    """Fleiss' kappa for items rated by a fixed number of annotators.

    Args:
        ratings: items x categories matrix; cell (i, j) counts the annotators
            who put item i in category j
        raters_per_item: annotators per item (every row must sum to it)

    Raises:
        MetricError: If a row does not sum to raters_per_item or fewer than 2 raters
    """
    matrix = np.asarray(ratings, dtype=float)
    r = raters_per_item
    if r < 2:
        raise MetricError(f"Fleiss' kappa needs at least 2 raters per item, got {r}")
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise MetricError("Ratings must be a non-empty items x categories matrix")
    if (matrix < 0).any():
        raise MetricError("Rating counts must be non-negative")
    row_sums = matrix.sum(axis=1)
    if not np.all(row_sums == r):
        bad = int(np.flatnonzero(row_sums != r)[0])
        raise MetricError(f"Item {bad} has {int(row_sums[bad])} ratings, expected {r}")

    item_agreement = ((matrix * matrix).sum(axis=1) - r) / (r * (r - 1))
    mean_agreement = float(item_agreement.mean())
    proportions = matrix.sum(axis=0) / (matrix.shape[0] * r)
    expected = float(proportions @ proportions)
    if expected == 1.0:
        # Every rating fell in one category.
        return 1.0
    return (mean_agreement - expected) / (1.0 - expected)


def majority_vote(labels: Sequence[Label]) -> Label:
    """Most frequent annotator label; ties go to the earliest class."""
    if not labels:
        raise MetricError("Cannot take a majority of zero labels")
    counts = Counter(labels)
    return max(CLASSES, key=lambda label: counts.get(label, 0))


def ratings_matrix(annotations: Sequence[Sequence[Label]]) -> np.ndarray:
    """Items x categories count matrix from per-item annotator labels."""
    matrix = np.zeros((len(annotations), len(CLASSES)), dtype=np.int64)
    for item, labels in enumerate(annotations):
        for label in labels:
            matrix[item, _POSITION[label]] += 1
    return matrix


# --- Split protocol ---


def split_train_test(
    corpus: Sized,
    train_size: int = DEFAULT_TRAIN_SIZE,
    repeats: int = DEFAULT_REPEATS,
    seed: int = 42,
) -> list[Split]:
    """Independent uniform train/test partitions, deterministic under seed.

    No stratification is applied.

    Raises:
        SplitError: If train_size is not smaller than the corpus
    """
    size = len(corpus)
    if train_size >= size:
        raise SplitError(f"Training size {train_size} must be smaller than the corpus ({size})")
    if train_size < 1:
        raise SplitError(f"Training size must be positive, got {train_size}")
    if repeats < 1:
        raise SplitError(f"Repeats must be positive, got {repeats}")

    rng = np.random.default_rng(seed)
    splits = []
    for _ in range(repeats):
        order = rng.permutation(size)
        splits.append(
            Split(
                train=tuple(sorted(int(i) for i in order[:train_size])),
                test=tuple(sorted(int(i) for i in order[train_size:])),
            )
        )
    return splits


# --- Evaluation ---


def _gold_labels(trends: Iterable[TrendingTopic]) -> list[Label]:
    gold = []
    for trend in trends:
        if trend.label is None:
            raise UnlabeledTrendError(trend.topic)
        gold.append(trend.label)
    return gold


def _predict_from_reports(reports: Sequence[MarginReport]) -> Label:
    if len(reports) == 1:
        return reports[0].predicted
    return committee_predict(reports)[0]


def evaluate(
    models: OneVsAllModel | Sequence[OneVsAllModel], trends: Sequence[TrendingTopic]
) -> EvalReport:
    """Score one model, or a committee of several, on labelled test trends.

    Raises:
        UnlabeledTrendError: If a test trend has no gold label
    """
    members = [models] if isinstance(models, OneVsAllModel) else list(models)
    if not members:
        raise EmptyCommitteeError("No models to evaluate")
    gold = _gold_labels(trends)
    predicted = [
        _predict_from_reports([margins(model, trend) for model in members]) for trend in trends
    ]
    return build_report(confusion_matrix(gold, predicted))


def summarize(
    per_repeat: Sequence[EvalReport], baselines: Mapping[str, float] | None = None
) -> CrossValidationReport:
    """Average metric values over repeats; also report metrics of the pooled confusion."""
    if not per_repeat:
        raise MetricError("No repeats to summarize")
    pooled = build_report(
        np.sum([np.asarray(report.confusion, dtype=np.int64) for report in per_repeat], axis=0)
    )
    return CrossValidationReport(
        accuracy=float(np.mean([report.accuracy for report in per_repeat])),
        cohen_kappa=float(np.mean([report.cohen_kappa for report in per_repeat])),
        per_class_precision={
            label: float(np.mean([report.per_class_precision[label] for report in per_repeat]))
            for label in CLASSES
        },
        confusion=pooled.confusion,
        per_repeat=tuple(per_repeat),
        pooled=pooled,
        baselines=dict(baselines or {}),
    )


def _representations(representation: str) -> tuple[Representation, ...]:
    if representation == "both":
        return (Representation.SOCIAL, Representation.BOW)
    return (Representation(representation),)


def cross_validate(
    corpus: Corpus,
    representation: str = "social",
    c: float = DEFAULT_C,
    seed: int = 42,
    *,
    train_size: int = DEFAULT_TRAIN_SIZE,
    repeats: int = DEFAULT_REPEATS,
    stopwords: Iterable[str] = (),
    workers: int = 1,
) -> dict[str, CrossValidationReport]:
    """Run the repeated random-split protocol.

    Vectors are computed once per corpus; each repeat fits the scaler and,
    for bag-of-words, the vocabulary on its training split only.

    Returns:
        Reports keyed by "social" and/or "bow"; with representation "both"
        a "committee" report (margin sum of the two) is added.
    """
    kinds = _representations(representation)
    trends = list(corpus)
    gold = _gold_labels(trends)
    splits = split_train_test(corpus, train_size, repeats, seed)

    social = None
    if Representation.SOCIAL in kinds:
        social = np.asarray([v.as_array() for v in extract_corpus_features(corpus, workers)])
    term_vectors = None
    if Representation.BOW in kinds:
        blocked = frozenset(stopwords)
        term_vectors = [tf_vector(trend, blocked) for trend in trends]

    def run_repeat(repeat: int) -> dict[str, EvalReport]:
        split = splits[repeat]
        train_labels = [gold[i] for i in split.train]
        test_gold = [gold[i] for i in split.test]
        reports: dict[Representation, list[MarginReport]] = {}

        for kind in kinds:
            if kind is Representation.SOCIAL:
                assert social is not None
                model = fit_one_vs_all(social[list(split.train)], train_labels, kind, c, seed)
                assert model.scaler is not None
                x_test = model.scaler.transform(social[list(split.test)])
            else:
                assert term_vectors is not None
                vocabulary = build_vocabulary(term_vectors[i] for i in split.train)
                x_train = np.asarray([term_vectors[i].to_array(vocabulary) for i in split.train])
                model = fit_one_vs_all(x_train, train_labels, kind, c, seed, vocabulary=vocabulary)
                x_test = np.asarray([term_vectors[i].to_array(vocabulary) for i in split.test])
            reports[kind] = [margins_for_vector(model, row) for row in x_test]

        results = {
            kind.value: build_report(
                confusion_matrix(test_gold, [report.predicted for report in reports[kind]])
            )
            for kind in kinds
        }
        if len(kinds) > 1:
            committee = [
                committee_predict(list(members))[0]
                for members in zip(*(reports[kind] for kind in kinds))
            ]
            results[COMMITTEE] = build_report(confusion_matrix(test_gold, committee))

        summary = ", ".join(f"{name} acc={r.accuracy:.3f}" for name, r in results.items())
        logger.info(f"Repeat {repeat + 1}/{len(splits)}: {summary}")
        return results

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_repeat, range(len(splits))))
    else:
        outcomes = [run_repeat(repeat) for repeat in range(len(splits))]

    baselines = {
        "majority_class": float(np.mean([_majority_baseline(gold, split) for split in splits])),
        "uniform_chance": 1.0 / len(CLASSES),
    }
    names = list(outcomes[0])
    return {
        name: summarize([outcome[name] for outcome in outcomes], baselines) for name in names
    }


def _majority_baseline(gold: Sequence[Label], split: Split) -> float:
    """Test accuracy of always predicting the most frequent training class."""
    majority = majority_vote([gold[i] for i in split.train])
    return sum(1 for i in split.test if gold[i] is majority) / len(split.test)
