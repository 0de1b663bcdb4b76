"""The 15 language-independent social features of a trend.

Indices 0-9 are arithmetic means of per-tweet values (spread velocity is the
tweet rate); indices 10-14 are Shannon diversity indices of symbol
populations within the trend.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Hashable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from trend_typer.exceptions import EmptyTrendError, MetricError
from trend_typer.models import Corpus, TrendingTopic
from trend_typer.syntax import parse_tweet_syntax, topic_occurrences
from trend_typer.text import tokenize

logger = logging.getLogger(__name__)

FEATURE_NAMES: tuple[str, ...] = (
    "retweet_depth_mean",
    "retweet_ratio",
    "hashtags_mean",
    "length_mean",
    "exclamation_ratio",
    "question_ratio",
    "links_mean",
    "topic_repetition_mean",
    "replies_ratio",
    "spread_velocity",
    "user_diversity",
    "retweeted_user_diversity",
    "hashtag_diversity",
    "language_diversity",
    "vocabulary_diversity",
)
FEATURE_SHORT_NAMES: tuple[str, ...] = tuple(f"f{i}" for i in range(len(FEATURE_NAMES)))
FEATURE_COUNT = len(FEATURE_NAMES)


@dataclass(frozen=True)
class SocialFeatureVector:
    """Fixed-order 15-dimensional representation of a trend."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != FEATURE_COUNT:
            raise ValueError(f"Expected {FEATURE_COUNT} values, got {len(self.values)}")

    def __getitem__(self, index: int) -> float:
        return self.values[index]

    def __len__(self) -> int:
        return FEATURE_COUNT

    def get(self, name: str) -> float:
        return self.values[FEATURE_NAMES.index(name)]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def arithmetic_mean(per_tweet_values: Sequence[float]) -> float:
    """Sum of per-tweet values divided by the number of tweets."""
    if len(per_tweet_values) == 0:
        raise EmptyTrendError("Cannot average over an empty trend")
    total = 0.0
    for value in per_tweet_values:
        total += value
    return total / len(per_tweet_values)


def spread_velocity(trend: TrendingTopic) -> float:
    """Tweets per second; the time span is floored at one second."""
    return len(trend.tweets) / max(trend.time_span, 1)


def shannon_index(population: Mapping[Hashable, int]) -> float:
    """Natural-log Shannon entropy of a symbol population.

    An empty population has diversity 0.

    Raises:
        MetricError: If any count is not strictly positive
    """
    if any(count <= 0 for count in population.values()):
        raise MetricError("Shannon index needs strictly positive counts")
    # Sorted counts make the result independent of insertion order.
    counts = sorted(population.values())
    total = sum(counts)
    entropy = 0.0
    for count in counts:
        p = count / total
        entropy -= p * math.log(p)
    return entropy if entropy > 0.0 else 0.0


def extract_features(trend: TrendingTopic) -> SocialFeatureVector:
    """Compute the social feature vector of a trend.

    Raises:
        EmptyTrendError: If the trend has no tweets
    """
    if not trend.tweets:
        raise EmptyTrendError(f"Trend {trend.topic!r} has no tweets")

    syntaxes = [parse_tweet_syntax(tweet.text) for tweet in trend.tweets]
    retweeted: Counter[str] = Counter()
    hashtags: Counter[str] = Counter()
    vocabulary: Counter[str] = Counter()
    for tweet, syntax in zip(trend.tweets, syntaxes):
        retweeted.update(syntax.retweeted_users)
        hashtags.update(syntax.hashtags)
        vocabulary.update(tokenize(tweet.text))

    values = (
        arithmetic_mean([s.retweet_depth for s in syntaxes]),
        arithmetic_mean([float(s.is_retweet) for s in syntaxes]),
        arithmetic_mean([len(s.hashtags) for s in syntaxes]),
        arithmetic_mean([s.char_length for s in syntaxes]),
        arithmetic_mean([float(s.has_exclamation) for s in syntaxes]),
        arithmetic_mean([float(s.has_question) for s in syntaxes]),
        arithmetic_mean([s.link_count for s in syntaxes]),
        arithmetic_mean([topic_occurrences(t.text, trend.topic) for t in trend.tweets]),
        arithmetic_mean([float(s.is_reply) for s in syntaxes]),
        spread_velocity(trend),
        shannon_index(Counter(tweet.user for tweet in trend.tweets)),
        shannon_index(retweeted),
        shannon_index(hashtags),
        shannon_index(Counter(tweet.language for tweet in trend.tweets)),
        shannon_index(vocabulary),
    )
    return SocialFeatureVector(tuple(float(v) for v in values))


def extract_corpus_features(corpus: Corpus, workers: int = 1) -> list[SocialFeatureVector]:
    """Feature vectors for every trend, in corpus order."""
    if workers <= 1:
        vectors = [extract_features(trend) for trend in corpus]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            vectors = list(pool.map(extract_features, corpus.trends))
    logger.info(f"Extracted social features for {len(vectors)} trends")
    return vectors
