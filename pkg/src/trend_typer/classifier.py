"""One-vs-all linear margin classifier and margin-sum committees."""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Any

import numpy as np
from pydantic import BaseModel, ValidationError

from trend_typer._internal.hinge import hinge_objective
from trend_typer.exceptions import (
    DegenerateTrainingError,
    DimensionMismatchError,
    EmptyCommitteeError,
    MissingClassError,
    ModelFormatError,
    UnlabeledTrendError,
)
from trend_typer.features import extract_features
from trend_typer.models import CLASSES, Corpus, Label, Representation, TrendingTopic
from trend_typer.text import Vocabulary, build_vocabulary, tf_vector

logger = logging.getLogger(__name__)

DEFAULT_C = 5.0
MAX_EPOCHS = 200
RELATIVE_TOLERANCE = 1e-6
MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class LinearModel:
    """Separating hyperplane of one binary classifier."""

    weights: tuple[float, ...]
    bias: float

    @cached_property
    def _weights_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def decision(self, x: np.ndarray) -> float:
        """Signed margin w.x + b."""
        return float(x @ self._weights_array) + self.bias


@dataclass(frozen=True)
class Scaler:
    """Per-dimension z-score standardization fit on training vectors."""

    mean: tuple[float, ...]
    std: tuple[float, ...]

    @classmethod
    def fit(cls, matrix: np.ndarray) -> Scaler:
        mean = matrix.mean(axis=0)
        std = matrix.std(axis=0)
        # Constant dimensions pass through centred on their value but unscaled;
        # rounding can leave them a std of a few ulps rather than zero.
        flat = np.ptp(matrix, axis=0) == 0.0
        constant = flat | (std <= np.finfo(float).eps * np.maximum(np.abs(mean), 1.0))
        mean = np.where(flat, matrix[0], mean)
        std = np.where(constant, 1.0, std)
        return cls(tuple(float(v) for v in mean), tuple(float(v) for v in std))

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        return (matrix - np.asarray(self.mean)) / np.asarray(self.std)


@dataclass(frozen=True)
class OneVsAllModel:
    """Four binary models, each separating one class from the other three."""

    per_class: Mapping[Label, LinearModel]
    representation: Representation
    scaler: Scaler | None = None
    vocabulary: Vocabulary | None = None

    @property
    def dimension(self) -> int:
        return self.per_class[CLASSES[0]].dimension


@dataclass(frozen=True)
class MarginReport:
    """Per-class margins for one trend and the class they select."""

    margins: Mapping[Label, float]
    predicted: Label

    @classmethod
    def from_margins(cls, margins: Mapping[Label, float]) -> MarginReport:
        return cls(margins=dict(margins), predicted=argmax_class(margins))


def argmax_class(scores: Mapping[Label, Any]) -> Label:
    """Class with the highest score; ties go to the earliest class in CLASSES."""
    # max() keeps the first of several equal maxima.
    return max(CLASSES, key=lambda label: scores[label])


def _fit_binary(
    x: np.ndarray,
    y: np.ndarray,
    c: float,
    seed: int | Sequence[int],
    max_epochs: int,
    tol: float,
) -> LinearModel:
    n, d = x.shape
    lam = 1.0 / (c * n)
    radius_sq = 1.0 / lam
    rng = np.random.default_rng(seed)
    # The bias is the weight of a constant feature, so it shrinks with the rest.
    augmented = np.hstack([x, np.ones((n, 1))])
    rows = list(augmented)
    row_norms_sq = np.einsum("ij,ij->i", augmented, augmented)

    def objective_of(weights: np.ndarray) -> float:
        return hinge_objective(weights[:d], float(weights[d]), x, y, c)

    # The zero model scores exactly c * n; keeping the best epoch never does worse.
    best = np.zeros(d + 1)
    best_objective = objective_of(best)
    previous = math.inf

    # weights == scale * direction; shrinking only touches the scalar.
    direction = np.zeros(d + 1)
    scale = 1.0
    t = 0
    for epoch in range(1, max_epochs + 1):
        direction *= scale
        scale = 1.0
        direction_sq = float(direction @ direction)
        # Sum of this epoch's iterates, kept as offset + mass * direction.
        offset = np.zeros(d + 1)
        mass = 0.0
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            row, label = rows[i], y[i]
            projection = float(row @ direction)
            violated = label * scale * projection < 1.0
            if t > 1:
                scale *= 1.0 - 1.0 / t
            if violated:
                step = eta * label / scale
                direction += step * row
                offset -= (mass * step) * row
                direction_sq += 2.0 * step * projection + step * step * row_norms_sq[i]
                norm_sq = scale * scale * direction_sq
                if norm_sq > radius_sq:
                    scale *= math.sqrt(radius_sq / norm_sq)
            mass += scale

        averaged = (offset + mass * direction) / n
        last = scale * direction
        objective = objective_of(averaged)
        logger.debug(f"epoch {epoch}: objective {objective:.6f}")
        for candidate, value in ((averaged, objective), (last, objective_of(last))):
            if value < best_objective:
                best, best_objective = candidate.copy(), value
        if math.isfinite(previous) and abs(previous - objective) <= tol * abs(previous):
            break
        previous = objective

    return LinearModel(tuple(float(v) for v in best[:d]), float(best[d]))


def train_binary(
    examples: Sequence[tuple[Sequence[float] | np.ndarray, int]],
    c: float = DEFAULT_C,
    seed: int = 0,
    *,
    max_epochs: int = MAX_EPOCHS,
    tol: float = RELATIVE_TOLERANCE,
) -> LinearModel:
    """Train a soft-margin linear classifier by stochastic subgradient descent.

    Minimizes (1/2)||w||^2 + C * sum(hinge) with a seeded shuffle per epoch
    and step size 1/(lambda * t), lambda = 1/(C * n). The bias is learned as
    the weight of a constant feature, iterates stay inside the ball of radius
    1/sqrt(lambda), and each epoch contributes the average of its iterates.
    Stops after max_epochs or once the epoch objective changes by less than
    tol (relative); the epoch with the lowest objective is returned.

    Args:
        examples: (vector, label) pairs with labels in {-1, +1}
        c: Penalty parameter
        seed: Shuffle seed

    Raises:
        DegenerateTrainingError: If only one label is present
        DimensionMismatchError: If vectors differ in length
    """
    if not examples:
        raise DegenerateTrainingError("No training examples")
    dimensions = {len(vector) for vector, _ in examples}
    if len(dimensions) != 1:
        raise DimensionMismatchError(
            f"Training vectors have mixed dimensions: {sorted(dimensions)}"
        )
    labels = np.asarray([label for _, label in examples], dtype=float)
    if not np.isin(labels, (-1.0, 1.0)).all():
        raise ValueError("Binary labels must be -1 or +1")
    if len(np.unique(labels)) < 2:
        raise DegenerateTrainingError("Binary training needs both positive and negative examples")
    if c <= 0:
        raise ValueError(f"C must be positive, got {c}")

    matrix = np.asarray([np.asarray(vector, dtype=float) for vector, _ in examples])
    return _fit_binary(matrix, labels, c, seed, max_epochs, tol)


def _check_training_labels(trends: Sequence[TrendingTopic]) -> list[Label]:
    labels = []
    for trend in trends:
        if trend.label is None:
            raise UnlabeledTrendError(trend.topic)
        labels.append(trend.label)
    present = set(labels)
    for label in CLASSES:
        if label not in present:
            raise MissingClassError(label.value)
    return labels


def fit_one_vs_all(
    matrix: np.ndarray,
    labels: Sequence[Label],
    representation: Representation,
    c: float = DEFAULT_C,
    seed: int = 42,
    *,
    vocabulary: Vocabulary | None = None,
    workers: int = 1,
    max_epochs: int = MAX_EPOCHS,
) -> OneVsAllModel:
    """Train the four binary models on already vectorized trends.

    Social vectors are standardized with a scaler fit on this matrix;
    bag-of-words counts are used as they are.
    """
    present = set(labels)
    for label in CLASSES:
        if label not in present:
            raise MissingClassError(label.value)

    scaler = None
    if representation is Representation.SOCIAL:
        scaler = Scaler.fit(matrix)
        matrix = scaler.transform(matrix)

    gold = np.asarray([label.value for label in labels])

    def train_class(position: int) -> LinearModel:
        label = CLASSES[position]
        y = np.where(gold == label.value, 1.0, -1.0)
        model = _fit_binary(matrix, y, c, [seed, position], max_epochs, RELATIVE_TOLERANCE)
        positives = int((y > 0).sum())
        logger.info(
            f"Trained {representation.value} model for {label.value} ({positives} positives)"
        )
        return model

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            models = list(pool.map(train_class, range(len(CLASSES))))
    else:
        models = [train_class(position) for position in range(len(CLASSES))]

    return OneVsAllModel(
        per_class=dict(zip(CLASSES, models)),
        representation=representation,
        scaler=scaler,
        vocabulary=vocabulary,
    )


def social_matrix(trends: Iterable[TrendingTopic]) -> np.ndarray:
    return np.asarray([extract_features(trend).as_array() for trend in trends])


def train_one_vs_all(
    corpus: Corpus,
    representation: Representation = Representation.SOCIAL,
    c: float = DEFAULT_C,
    seed: int = 42,
    *,
    stopwords: Iterable[str] = (),
    workers: int = 1,
) -> OneVsAllModel:
    """Train a one-vs-all model on a labelled corpus.

    Raises:
        UnlabeledTrendError: If a training trend has no label
        MissingClassError: If a class has no training trend
    """
    trends = list(corpus)
    labels = _check_training_labels(trends)

    vocabulary = None
    if representation is Representation.SOCIAL:
        matrix = social_matrix(trends)
    else:
        blocked = frozenset(stopwords)
        vectors = [tf_vector(trend, blocked) for trend in trends]
        vocabulary = build_vocabulary(vectors)
        matrix = np.asarray([vector.to_array(vocabulary) for vector in vectors])
        logger.info(f"Bag-of-words vocabulary has {len(vocabulary)} terms")

    return fit_one_vs_all(
        matrix, labels, representation, c, seed, vocabulary=vocabulary, workers=workers
    )


def vectorize(model: OneVsAllModel, trend: TrendingTopic) -> np.ndarray:
    """Represent a trend in the model's input space (standardized when social)."""
    if model.representation is Representation.SOCIAL:
        x = extract_features(trend).as_array()
        return model.scaler.transform(x) if model.scaler is not None else x
    if model.vocabulary is None:
        raise ModelFormatError("Bag-of-words model has no vocabulary")
    # Stopwords never entered the vocabulary, so no filtering is needed here.
    return tf_vector(trend).to_array(model.vocabulary)


def margins_for_vector(model: OneVsAllModel, x: np.ndarray) -> MarginReport:
    if x.shape[-1] != model.dimension:
        raise DimensionMismatchError(f"Expected {model.dimension} dimensions, got {x.shape[-1]}")
    return MarginReport.from_margins(
        {label: model.per_class[label].decision(x) for label in CLASSES}
    )


def margins(model: OneVsAllModel, trend: TrendingTopic) -> MarginReport:
    """Per-class margins m_i = w_i.x + b_i and the argmax class."""
    return margins_for_vector(model, vectorize(model, trend))


def predict(model: OneVsAllModel, trend: TrendingTopic) -> Label:
    return margins(model, trend).predicted


def committee_predict(reports: Sequence[MarginReport]) -> tuple[Label, dict[Label, float]]:
    """Sum margins per class across classifiers and select the highest sum.

    Raises:
        EmptyCommitteeError: If no reports are given
    """
    if not reports:
        raise EmptyCommitteeError("A committee needs at least one margin report")
    sums: dict[Label, Any] = {}
    for label in CLASSES:
        total: Any = 0
        for report in reports:
            total = total + report.margins[label]
        sums[label] = total
    return argmax_class(sums), sums


# --- Model files ---


class _LinearModelRecord(BaseModel):
    weights: list[float]
    bias: float


class _ScalerRecord(BaseModel):
    mean: list[float]
    std: list[float]


class _ModelDocument(BaseModel):
    version: int
    representation_kind: Representation
    classes: list[Label]
    scaler: _ScalerRecord | None = None
    models: dict[Label, _LinearModelRecord]
    vocabulary: list[str] | None = None


def save_model(model: OneVsAllModel, sink: IO[bytes]) -> None:
    """Write a model as a single JSON document."""
    document: dict[str, Any] = {
        "version": MODEL_FORMAT_VERSION,
        "representation_kind": model.representation.value,
        "classes": [label.value for label in CLASSES],
        "scaler": (
            {"mean": list(model.scaler.mean), "std": list(model.scaler.std)}
            if model.scaler is not None
            else None
        ),
        "models": {
            label.value: {
                "weights": list(model.per_class[label].weights),
                "bias": model.per_class[label].bias,
            }
            for label in CLASSES
        },
        "vocabulary": list(model.vocabulary.terms) if model.vocabulary is not None else None,
    }
    sink.write(json.dumps(document).encode("utf-8"))
    sink.flush()


def load_model(source: IO[bytes]) -> OneVsAllModel:
    """Read a model written by save_model.

    Raises:
        ModelFormatError: If the payload is corrupt or the version is unsupported
    """
    try:
        # The stdlib parser round-trips float reprs exactly.
        payload = json.loads(source.read().decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ModelFormatError(f"Corrupt model file: {e}") from e
    if not isinstance(payload, dict):
        raise ModelFormatError("Corrupt model file: expected a JSON object")
    if payload.get("version") != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"Unsupported model version {payload.get('version')!r} "
            f"(expected {MODEL_FORMAT_VERSION})"
        )
    try:
        document = _ModelDocument.model_validate(payload)
    except ValidationError as e:
        raise ModelFormatError(f"Corrupt model file: {e.error_count()} validation error(s)") from e

    if document.classes != list(CLASSES) or set(document.models) != set(CLASSES):
        raise ModelFormatError("Model must cover exactly the four trend classes")

    per_class = {
        label: LinearModel(tuple(record.weights), record.bias)
        for label, record in document.models.items()
    }
    dimensions = {model.dimension for model in per_class.values()}
    if len(dimensions) != 1:
        raise ModelFormatError("Per-class models have different dimensions")
    dimension = dimensions.pop()
    values = [v for model in per_class.values() for v in (*model.weights, model.bias)]
    if not all(math.isfinite(v) for v in values):
        raise ModelFormatError("Model weights must be finite")

    scaler = None
    if document.scaler is not None:
        if not len(document.scaler.mean) == len(document.scaler.std) == dimension:
            raise ModelFormatError("Scaler does not match the model dimension")
        scaler = Scaler(tuple(document.scaler.mean), tuple(document.scaler.std))

    vocabulary = None
    if document.vocabulary is not None:
        if len(document.vocabulary) != dimension:
            raise ModelFormatError("Vocabulary does not match the model dimension")
        try:
            vocabulary = Vocabulary(tuple(document.vocabulary))
        except ValueError as e:
            raise ModelFormatError(str(e)) from e
    if document.representation_kind is Representation.BOW and vocabulary is None:
        raise ModelFormatError("Bag-of-words model has no vocabulary")

    return OneVsAllModel(
        per_class={label: per_class[label] for label in CLASSES},
        representation=document.representation_kind,
        scaler=scaler,
        vocabulary=vocabulary,
    )
