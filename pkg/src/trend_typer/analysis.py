"""Per-class feature distributions and corpus description statistics."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any

import numpy as np

from trend_typer.exceptions import UnlabeledTrendError
from trend_typer.features import FEATURE_NAMES, extract_corpus_features
from trend_typer.models import CLASSES, Corpus, Label

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuartileRow:
    """Five-number summary of one feature within one class.

    Whiskers are the observed extremes, not 1.5 x IQR fences.
    """

    label: Label
    feature: str
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


@dataclass(frozen=True)
class QuartileReport:
    rows: tuple[QuartileRow, ...]

    def get(self, label: Label, feature: str) -> QuartileRow:
        for row in self.rows:
            if row.label is label and row.feature == feature:
                return row
        raise KeyError(f"No quartiles for {label.value}/{feature}")

    def labels(self) -> list[Label]:
        return [label for label in CLASSES if any(row.label is label for row in self.rows)]


def _five_numbers(values: np.ndarray) -> tuple[float, float, float, float, float]:
    q1, median, q3 = np.percentile(values, [25, 50, 75], method="linear")
    # Interpolation can leave a last-bit wobble on constant columns.
    low, high = float(values.min()), float(values.max())
    q1, median, q3 = (min(max(float(q), low), high) for q in (q1, median, q3))
    q1, q3 = min(q1, median), max(q3, median)
    return low, q1, median, q3, high


def analyze_distributions(corpus: Corpus, workers: int = 1) -> QuartileReport:
    """Quartiles of each social feature per class.

    Classes without trends are omitted from the report.

    Raises:
        UnlabeledTrendError: If any trend has no gold label
    """
    for trend in corpus:
        if trend.label is None:
            raise UnlabeledTrendError(trend.topic)

    features = extract_corpus_features(corpus, workers=workers)
    matrix = np.array([vector.values for vector in features], dtype=float)
    labels = [trend.label for trend in corpus]

    rows = []
    for label in CLASSES:
        mask = np.array([gold is label for gold in labels], dtype=bool)
        if not mask.any():
            continue
        for column, name in enumerate(FEATURE_NAMES):
            rows.append(QuartileRow(label, name, *_five_numbers(matrix[mask, column])))
    logger.info(f"Computed quartiles for {len(rows)} class/feature cells")
    return QuartileReport(tuple(rows))


@dataclass(frozen=True)
class CorpusStatistics:
    """Dataset description figures."""

    trends: int
    tweets: int
    users: int
    tweets_per_trend: float
    languages: int
    class_distribution: dict[str, int]
    predominant_languages: dict[str, int]
    unlabeled: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "trends": self.trends,
            "tweets": self.tweets,
            "users": self.users,
            "tweets_per_trend": self.tweets_per_trend,
            "languages": self.languages,
            "class_distribution": dict(self.class_distribution),
            "predominant_languages": dict(self.predominant_languages),
            "unlabeled": self.unlabeled,
        }


def corpus_statistics(corpus: Corpus) -> CorpusStatistics:
    """Counts of trends, tweets, users and languages in a corpus.

    The predominant language of a trend is the most frequent language code of
    its tweets (first seen wins ties); the empty code is reported as "".
    """
    users: set[str] = set()
    languages: set[str] = set()
    predominant: Counter[str] = Counter()
    tweets = 0
    for trend in corpus:
        tweets += len(trend)
        users.update(tweet.user for tweet in trend.tweets)
        trend_languages = Counter(tweet.language for tweet in trend.tweets)
        languages.update(trend_languages)
        predominant[trend_languages.most_common(1)[0][0]] += 1

    classes = Counter(trend.label for trend in corpus if trend.label is not None)
    return CorpusStatistics(
        trends=len(corpus),
        tweets=tweets,
        users=len(users),
        tweets_per_trend=tweets / len(corpus) if len(corpus) else 0.0,
        languages=len(languages),
        class_distribution={label.value: classes[label] for label in CLASSES},
        predominant_languages=dict(
            sorted(predominant.items(), key=lambda item: (-item[1], item[0]))
        ),
        unlabeled=sum(1 for trend in corpus if trend.label is None),
    )
