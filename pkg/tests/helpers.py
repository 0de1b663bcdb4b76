"""Shared test helpers for trend_typer tests."""

from __future__ import annotations

import itertools
from collections.abc import Sequence

import numpy as np

from trend_typer import CLASSES, Label, TrendingTopic, Tweet

BASE_TS = 1_300_000_000


def make_tweet(
    text: str, timestamp: int = BASE_TS, user: str = "alice", language: str = "en"
) -> Tweet:
    return Tweet(text=text, timestamp=timestamp, user=user, language=language)


def make_trend(
    topic: str,
    texts: Sequence[str],
    label: Label | None = None,
    *,
    step: int = 10,
    users: Sequence[str] | None = None,
    languages: Sequence[str] | None = None,
) -> TrendingTopic:
    """Trend whose i-th tweet is posted step * i seconds after BASE_TS."""
    tweets = tuple(
        make_tweet(
            text,
            timestamp=BASE_TS + step * i,
            user=users[i] if users else f"user{i}",
            language=languages[i] if languages else "en",
        )
        for i, text in enumerate(texts)
    )
    return TrendingTopic(topic=topic, tweets=tweets, label=label)


def brute_force_fleiss(annotations: Sequence[Sequence[Label]]) -> float:
    """Fleiss' kappa from explicit rater pairs.

    Observed agreement is the share of agreeing ordered rater pairs per item;
    expected agreement is the chance two random ratings coincide.
    """
    agreements = []
    for labels in annotations:
        pairs = list(itertools.permutations(range(len(labels)), 2))
        agreements.append(sum(labels[a] == labels[b] for a, b in pairs) / len(pairs))
    observed = sum(agreements) / len(agreements)

    flat = [label for labels in annotations for label in labels]
    expected = sum((flat.count(label) / len(flat)) ** 2 for label in CLASSES)
    if expected == 1.0:
        return 1.0
    return (observed - expected) / (1.0 - expected)


def brute_force_argmax(scores: dict[Label, float]) -> Label:
    """Highest-scoring class, scanning CLASSES and keeping the first maximum."""
    best = CLASSES[0]
    for label in CLASSES[1:]:
        if scores[label] > scores[best]:
            best = label
    return best


def separable_points(
    n: int, seed: int = 0, gap: float = 0.5
) -> list[tuple[np.ndarray, int]]:
    """2-D points labelled by the side of the line x0 + x1 = 0, with a margin gap."""
    rng = np.random.default_rng(seed)
    examples: list[tuple[np.ndarray, int]] = []
    while len(examples) < n:
        point = rng.uniform(-3.0, 3.0, size=2)
        side = point[0] + point[1]
        if abs(side) < gap:
            continue
        examples.append((point, 1 if side > 0 else -1))
    return examples
