"""Bag-of-words representation of trends and per-class top terms."""

from __future__ import annotations

import logging
import string
import unicodedata
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from trend_typer.exceptions import EmptyTrendError
from trend_typer.models import Corpus, Label, TrendingTopic

logger = logging.getLogger(__name__)

SHIPPED_STOPWORD_LANGUAGES = ("en", "es", "pt", "nl")
TWITTER_STOPWORDS = frozenset({"rt"})
DEFAULT_TOP_TERMS = 15

# Mentions and hashtags keep their sigil.
_KEEP_LEADING = frozenset("@#")


def _is_punctuation(char: str) -> bool:
    return char in string.punctuation or unicodedata.category(char).startswith("P")


def _strip_punctuation(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_punctuation(token[start]) and token[start] not in _KEEP_LEADING:
        start += 1
    while end > start and _is_punctuation(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(text: str) -> list[str]:
    """Lowercased whitespace tokens with edge punctuation stripped.

    Tokens containing a URL or starting with "http" are dropped.
    """
    tokens = []
    for raw in text.lower().split():
        token = _strip_punctuation(raw)
        if not token or token.startswith("http") or "http://" in raw or "https://" in raw:
            continue
        tokens.append(token)
    return tokens


def tokenize_filtered(text: str, stopwords: Iterable[str] = ()) -> list[str]:
    """Tokenize and drop stopwords plus the Twitter-specific "rt"."""
    blocked = TWITTER_STOPWORDS | frozenset(stopwords)
    return [token for token in tokenize(text) if token not in blocked]


def load_stopwords(
    languages: Sequence[str] = SHIPPED_STOPWORD_LANGUAGES,
    extra_paths: Sequence[str | Path] = (),
) -> frozenset[str]:
    """Load the shipped stopword lists plus any user-supplied files.

    Files hold one word per line; blank lines and lines starting with "#" are ignored.
    """
    words: set[str] = set()
    package_dir = resources.files("trend_typer.data").joinpath("stopwords")
    for language in languages:
        content = package_dir.joinpath(f"{language}.txt").read_text("utf-8")
        words.update(_parse_stopword_lines(content))
    for path in extra_paths:
        words.update(_parse_stopword_lines(Path(path).read_text("utf-8")))
    logger.debug(f"Loaded {len(words)} stopwords")
    return frozenset(words)


def _parse_stopword_lines(content: str) -> set[str]:
    return {
        line.strip().lower()
        for line in content.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    }


@dataclass(frozen=True)
class TermFrequencyVector:
    """Sparse term counts of a trend. Zero counts are never stored."""

    counts: Mapping[str, int] = field(default_factory=dict)

    def __add__(self, other: TermFrequencyVector) -> TermFrequencyVector:
        merged = Counter(self.counts)
        merged.update(other.counts)
        return TermFrequencyVector(dict(merged))

    def __len__(self) -> int:
        return len(self.counts)

    def to_array(self, vocabulary: Vocabulary) -> np.ndarray:
        """Dense vector over the vocabulary; out-of-vocabulary terms are ignored."""
        vector = np.zeros(len(vocabulary), dtype=float)
        for term, count in self.counts.items():
            position = vocabulary.index.get(term)
            if position is not None:
                vector[position] = count
        return vector


@dataclass(frozen=True)
class Vocabulary:
    """Ordered set of terms defining the bag-of-words dimensions."""

    terms: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {term: position for position, term in enumerate(self.terms)}
        if len(index) != len(self.terms):
            raise ValueError("Vocabulary terms must be unique")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: object) -> bool:
        return term in self.index


def tf_vector(trend: TrendingTopic, stopwords: Iterable[str] = ()) -> TermFrequencyVector:
    """Sum of filtered token counts over every tweet of the trend."""
    if not trend.tweets:
        raise EmptyTrendError(f"Trend {trend.topic!r} has no tweets")
    blocked = frozenset(stopwords)
    counts: Counter[str] = Counter()
    for tweet in trend.tweets:
        counts.update(tokenize_filtered(tweet.text, blocked))
    return TermFrequencyVector(dict(counts))


def build_vocabulary(vectors: Iterable[TermFrequencyVector]) -> Vocabulary:
    """Fold term vectors into a vocabulary in first-appearance order."""
    seen: dict[str, None] = {}
    for vector in vectors:
        for term in vector.counts:
            seen.setdefault(term, None)
    return Vocabulary(tuple(seen))


def top_terms(
    corpus: Corpus,
    label: Label,
    k: int = DEFAULT_TOP_TERMS,
    stopwords: Iterable[str] = (),
) -> list[tuple[str, int]]:
    """Highest-TF terms over all trends of a class.

    Sorted by descending count, ties broken lexicographically. Returns an
    empty list when the corpus has no trend of the class.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    blocked = frozenset(stopwords)
    totals: Counter[str] = Counter()
    for trend in corpus.with_label(label):
        totals.update(tf_vector(trend, blocked).counts)
    ranked = sorted(totals.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]
