"""Seeded generator of labelled synthetic trend corpora.

Each class profile shifts the sampling distributions of the tweet facets the
social features measure. Facets are written into the tweet text itself
(RT chains, replies, hashtags, links, punctuation, topic mentions), so the
parser recovers them the same way it does for real tweets.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from trend_typer.exceptions import ProfileError
from trend_typer.models import CLASSES, MAX_TWEET_LENGTH, Corpus, Label, TrendingTopic, Tweet

logger = logging.getLogger(__name__)

# 2011-03-01 00:00:00 UTC, start of the original collection week.
BASE_EPOCH = 1298937600
COLLECTION_SECONDS = 7 * 24 * 3600

LANGUAGES = ("en", "es", "pt", "nl", "id", "de", "fr", "it", "ja", "tr", "ko", "ar", "ru", "ms")

PUBLISHED_DISTRIBUTION: Mapping[Label, int] = {
    Label.NEWS: 142,
    Label.ONGOING_EVENT: 616,
    Label.MEME: 251,
    Label.COMMEMORATIVE: 27,
}

MAX_RETWEET_DEPTH = 5
MAX_HASHTAGS = 5
MAX_LINKS = 3
MAX_TOPIC_COPIES = 4
MIN_LENGTH = 20

_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"
_SYLLABLES = len(_CONSONANTS) * len(_VOWELS)

# Distinct words that the two- and three-syllable generators can produce.
MAX_HASHTAG_POOL = _SYLLABLES**2
MAX_VOCABULARY_POOL = _SYLLABLES**3


class ClassProfile(BaseModel):
    """Sampling parameters of one trend class.

    Rates are Poisson means per tweet; skews are Zipf exponents over the
    ranked pool members (0 = uniform).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    retweet_prob: float = Field(ge=0.0, le=1.0)
    retweet_continue_prob: float = Field(ge=0.0, le=1.0)
    hashtag_rate: float = Field(ge=0.0)
    length_mean: float = Field(gt=0.0, le=MAX_TWEET_LENGTH)
    length_sd: float = Field(ge=0.0)
    exclamation_prob: float = Field(ge=0.0, le=1.0)
    question_prob: float = Field(ge=0.0, le=1.0)
    link_rate: float = Field(ge=0.0)
    topic_repeat_rate: float = Field(ge=0.0)
    reply_prob: float = Field(ge=0.0, le=1.0)
    gap_mean: float = Field(gt=0.0)
    user_pool: int = Field(ge=1)
    user_skew: float = Field(ge=0.0)
    retweeted_pool: int = Field(ge=1)
    retweeted_skew: float = Field(ge=0.0)
    hashtag_pool: int = Field(ge=1, le=MAX_HASHTAG_POOL)
    hashtag_skew: float = Field(ge=0.0)
    language_pool: int = Field(ge=1, le=len(LANGUAGES))
    language_skew: float = Field(ge=0.0)
    vocabulary_pool: int = Field(ge=1, le=MAX_VOCABULARY_POOL)
    vocabulary_skew: float = Field(ge=0.0)
    signature_terms: tuple[str, ...] = ()
    signature_prob: float = Field(default=0.0, ge=0.0, le=1.0)
    jitter: float = Field(default=0.2, ge=0.0, lt=1.0)


def validate_profile(profile: ClassProfile | Mapping[str, Any]) -> ClassProfile:
    """Re-validate a profile (copies made with model_copy skip validation).

    Raises:
        ProfileError: Naming the first invalid field
    """
    data = profile.model_dump() if isinstance(profile, ClassProfile) else dict(profile)
    try:
        return ClassProfile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "profile"
        raise ProfileError(field, first["msg"]) from e


def default_profiles() -> dict[Label, ClassProfile]:
    """Shipped profiles.

    News: more exclamations, the widest vocabulary, moderate retweeting.
    Ongoing events: short tweets, many languages, widely spread retweets.
    Memes: heavy and deep retweeting of a few sources, few languages, more links.
    Commemoratives: repeated topic, questions, many hashtags.
    """
    return {
        Label.NEWS: ClassProfile(
            retweet_prob=0.45,
            retweet_continue_prob=0.2,
            hashtag_rate=0.3,
            length_mean=110.0,
            length_sd=20.0,
            exclamation_prob=0.35,
            question_prob=0.05,
            link_rate=0.35,
            topic_repeat_rate=0.1,
            reply_prob=0.08,
            gap_mean=3.0,
            user_pool=150,
            user_skew=0.8,
            retweeted_pool=20,
            retweeted_skew=1.0,
            hashtag_pool=10,
            hashtag_skew=1.0,
            language_pool=8,
            language_skew=1.5,
            vocabulary_pool=800,
            vocabulary_skew=0.6,
            signature_terms=("news", "breaking", "fired", "killed", "report", "minister"),
            signature_prob=0.5,
        ),
        Label.ONGOING_EVENT: ClassProfile(
            retweet_prob=0.15,
            retweet_continue_prob=0.1,
            hashtag_rate=0.35,
            length_mean=55.0,
            length_sd=12.0,
            exclamation_prob=0.2,
            question_prob=0.1,
            link_rate=0.08,
            topic_repeat_rate=0.1,
            reply_prob=0.15,
            gap_mean=1.0,
            user_pool=150,
            user_skew=0.8,
            retweeted_pool=40,
            retweeted_skew=0.4,
            hashtag_pool=8,
            hashtag_skew=1.0,
            language_pool=12,
            language_skew=0.6,
            vocabulary_pool=300,
            vocabulary_skew=1.0,
            signature_terms=("watching", "live", "tonight", "game", "tv", "watch"),
            signature_prob=0.5,
        ),
        Label.MEME: ClassProfile(
            retweet_prob=0.7,
            retweet_continue_prob=0.35,
            hashtag_rate=0.6,
            length_mean=100.0,
            length_sd=20.0,
            exclamation_prob=0.15,
            question_prob=0.08,
            link_rate=0.45,
            topic_repeat_rate=0.1,
            reply_prob=0.05,
            gap_mean=0.8,
            user_pool=150,
            user_skew=0.8,
            retweeted_pool=6,
            retweeted_skew=1.8,
            hashtag_pool=5,
            hashtag_skew=1.2,
            language_pool=3,
            language_skew=2.5,
            vocabulary_pool=400,
            vocabulary_skew=1.0,
            signature_terms=("lol", "winning", "love", "twitter", "funny", "lmao"),
            signature_prob=0.5,
        ),
        Label.COMMEMORATIVE: ClassProfile(
            retweet_prob=0.3,
            retweet_continue_prob=0.15,
            hashtag_rate=0.9,
            length_mean=95.0,
            length_sd=20.0,
            exclamation_prob=0.25,
            question_prob=0.3,
            link_rate=0.1,
            topic_repeat_rate=0.6,
            reply_prob=0.1,
            gap_mean=2.5,
            user_pool=150,
            user_skew=0.8,
            retweeted_pool=40,
            retweeted_skew=0.5,
            hashtag_pool=4,
            hashtag_skew=1.0,
            language_pool=8,
            language_skew=1.2,
            vocabulary_pool=500,
            vocabulary_skew=0.9,
            signature_terms=("happy", "birthday", "day", "anos", "anniversary", "remember"),
            signature_prob=0.6,
        ),
    }


def class_counts(distribution: str, total: int) -> dict[Label, int]:
    """Trends per class for a corpus of the given total size.

    "balanced" splits evenly; "published" follows the class mix of the
    annotated 2011 dataset (largest-remainder rounding, at least one trend per class).
    """
    if total < len(CLASSES):
        raise ProfileError("trends", f"need at least {len(CLASSES)} trends, got {total}")
    if distribution == "balanced":
        base, extra = divmod(total, len(CLASSES))
        return {label: base + (1 if i < extra else 0) for i, label in enumerate(CLASSES)}
    if distribution != "published":
        raise ProfileError("distribution", f"unknown distribution {distribution!r}")

    weight_total = sum(PUBLISHED_DISTRIBUTION.values())
    exact = {label: total * PUBLISHED_DISTRIBUTION[label] / weight_total for label in CLASSES}
    counts = {label: max(1, int(exact[label])) for label in CLASSES}
    by_remainder = sorted(CLASSES, key=lambda label: (-(exact[label] % 1), CLASSES.index(label)))
    position = 0
    while sum(counts.values()) < total:
        counts[by_remainder[position % len(CLASSES)]] += 1
        position += 1
    while sum(counts.values()) > total:
        largest = max(CLASSES, key=lambda label: counts[label])
        counts[largest] -= 1
    return counts


@dataclass(frozen=True)
class TweetPlan:
    """The syntax a generated tweet is meant to carry."""

    retweet_chain: tuple[str, ...]
    reply_to: str | None
    words: tuple[str, ...]
    topic_count: int
    hashtags: tuple[str, ...]
    links: tuple[str, ...]
    exclamation: bool
    question: bool


def render_tweet(plan: TweetPlan) -> str:
    """Write a plan out as tweet text."""
    prefix = "".join(f"RT @{user}: " for user in plan.retweet_chain)
    body = " ".join(plan.words)
    if plan.reply_to is not None:
        body = f"@{plan.reply_to} {body}"
    if plan.exclamation:
        body += "!"
    if plan.question:
        body += "?"
    tail = " ".join((*plan.hashtags, *plan.links))
    return prefix + body + (f" {tail}" if tail else "")


def _zipf_weights(size: int, skew: float) -> np.ndarray:
    weights = np.arange(1, size + 1, dtype=float) ** -skew
    return weights / weights.sum()


def pseudo_words(rng: np.random.Generator, count: int, syllables: int = 3) -> list[str]:
    """Distinct pronounceable lowercase words made of consonant-vowel syllables."""
    capacity = _SYLLABLES**syllables
    if count > capacity:
        raise ValueError(
            f"Only {capacity} distinct {syllables}-syllable words exist, asked for {count}"
        )
    words: dict[str, None] = {}
    while len(words) < count:
        consonants = rng.integers(0, len(_CONSONANTS), size=syllables)
        vowels = rng.integers(0, len(_VOWELS), size=syllables)
        word = "".join(_CONSONANTS[c] + _VOWELS[v] for c, v in zip(consonants, vowels))
        words.setdefault(word, None)
    return list(words)


def _jittered(value: float, rng: np.random.Generator, jitter: float) -> float:
    return float(value * rng.uniform(1.0 - jitter, 1.0 + jitter))


def _probability(value: float) -> float:
    return min(max(value, 0.0), 1.0)


class TrendSampler:
    """Draws the tweets of one synthetic trend.

    Per-trend parameters are the class profile perturbed by up to
    +/- profile.jitter (relative). Random draws are made in bulk up front.
    """

    def __init__(
        self,
        profile: ClassProfile,
        topic: str,
        class_words: Sequence[str],
        tweet_count: int,
        rng: np.random.Generator,
        *,
        trend_index: int = 0,
    ) -> None:
        if tweet_count < 1:
            raise ProfileError("tweets_per_trend", f"must be positive, got {tweet_count}")
        self.profile = profile
        self.topic = topic
        self.tweet_count = tweet_count
        self._rng = rng
        self._class_words = list(class_words)
        self._draw(trend_index)

    def _draw(self, trend_index: int) -> None:
        p, rng, n, j = self.profile, self._rng, self.tweet_count, self.profile.jitter

        self.users = [f"user{trend_index}_{k}" for k in range(p.user_pool)]
        self.sources = [f"src{trend_index}_{k}" for k in range(p.retweeted_pool)]
        self.tags = ["#" + word for word in pseudo_words(rng, p.hashtag_pool, syllables=2)]
        rotation = int(rng.integers(0, 3))
        languages = LANGUAGES[rotation:] + LANGUAGES[:rotation]
        self.languages = list(languages[: p.language_pool])
        # Each trend favours a different slice of its class vocabulary.
        self.words = [self._class_words[i] for i in rng.permutation(len(self._class_words))]

        retweet_prob = _probability(_jittered(p.retweet_prob, rng, j))
        continue_prob = _probability(_jittered(p.retweet_continue_prob, rng, j))
        reply_prob = _probability(_jittered(p.reply_prob, rng, j))
        exclamation_prob = _probability(_jittered(p.exclamation_prob, rng, j))
        question_prob = _probability(_jittered(p.question_prob, rng, j))
        length_mean = _jittered(p.length_mean, rng, j)

        if continue_prob < 1.0:
            chain_lengths = rng.geometric(1.0 - continue_prob, size=n)
        else:
            chain_lengths = np.full(n, MAX_RETWEET_DEPTH)
        self.depths = np.where(
            rng.random(n) < retweet_prob, np.minimum(chain_lengths, MAX_RETWEET_DEPTH), 0
        )
        self.replies = (rng.random(n) < reply_prob) & (self.depths == 0)
        self.exclamations = rng.random(n) < exclamation_prob
        self.questions = rng.random(n) < question_prob
        self.hashtag_counts = np.minimum(
            rng.poisson(_jittered(p.hashtag_rate, rng, j), n), MAX_HASHTAGS
        )
        self.link_counts = np.minimum(rng.poisson(_jittered(p.link_rate, rng, j), n), MAX_LINKS)
        self.topic_counts = np.minimum(
            1 + rng.poisson(_jittered(p.topic_repeat_rate, rng, j), n), MAX_TOPIC_COPIES
        )
        self.lengths = np.clip(
            rng.normal(length_mean, p.length_sd, n), MIN_LENGTH, MAX_TWEET_LENGTH
        )
        self.signatures = rng.random(n) < (p.signature_prob if p.signature_terms else 0.0)

        self.user_draws = rng.choice(
            p.user_pool, size=n, p=_zipf_weights(p.user_pool, _jittered(p.user_skew, rng, j))
        )
        self.reply_draws = rng.integers(0, p.user_pool, size=n)
        self.source_draws = rng.choice(
            p.retweeted_pool,
            size=int(self.depths.sum()),
            p=_zipf_weights(p.retweeted_pool, _jittered(p.retweeted_skew, rng, j)),
        )
        self.tag_draws = rng.choice(
            p.hashtag_pool,
            size=int(self.hashtag_counts.sum()),
            p=_zipf_weights(p.hashtag_pool, p.hashtag_skew),
        )
        self.language_draws = rng.choice(
            p.language_pool,
            size=n,
            p=_zipf_weights(p.language_pool, _jittered(p.language_skew, rng, j)),
        )
        self.signature_draws = rng.choice(
            max(len(p.signature_terms), 1),
            size=n,
            p=_zipf_weights(max(len(p.signature_terms), 1), 1.0),
        )
        self._word_weights = _zipf_weights(len(self.words), _jittered(p.vocabulary_skew, rng, j))
        # Enough filler for the longest tweets; topped up lazily if exhausted.
        self._filler = list(rng.choice(len(self.words), size=n * 45, p=self._word_weights))
        self.link_draws = rng.integers(0, 10**8, size=int(self.link_counts.sum()))
        self.gaps = rng.exponential(_jittered(p.gap_mean, rng, j), size=n - 1)
        self.start = BASE_EPOCH + int(rng.integers(0, COLLECTION_SECONDS))

    def _next_filler(self) -> str:
        if not self._filler:
            self._filler = list(
                self._rng.choice(len(self.words), size=self.tweet_count, p=self._word_weights)
            )
        return self.words[self._filler.pop()]

    @cached_property
    def plans(self) -> list[TweetPlan]:
        """One plan per tweet, in posting order."""
        plans = []
        source_at = tag_at = link_at = 0
        for i in range(self.tweet_count):
            depth = int(self.depths[i])
            chain = tuple(
                self.sources[k] for k in self.source_draws[source_at : source_at + depth]
            )
            source_at += depth
            tag_count = int(self.hashtag_counts[i])
            hashtags = tuple(self.tags[k] for k in self.tag_draws[tag_at : tag_at + tag_count])
            tag_at += tag_count
            link_count = int(self.link_counts[i])
            links = tuple(
                f"http://t.co/{int(k):08d}" for k in self.link_draws[link_at : link_at + link_count]
            )
            link_at += link_count
            reply_to = self.users[int(self.reply_draws[i])] if self.replies[i] else None

            words: list[str] = []
            if self.signatures[i]:
                words.append(self.profile.signature_terms[int(self.signature_draws[i])])
            topic_count = int(self.topic_counts[i])
            skeleton = TweetPlan(
                retweet_chain=chain,
                reply_to=reply_to,
                words=(*words, *([self.topic] * topic_count)),
                topic_count=topic_count,
                hashtags=hashtags,
                links=links,
                exclamation=bool(self.exclamations[i]),
                question=bool(self.questions[i]),
            )
            length = len(render_tweet(skeleton))
            target = min(int(self.lengths[i]), MAX_TWEET_LENGTH)
            while True:
                word = self._next_filler()
                if length + len(word) + 1 > target:
                    break
                words.append(word)
                length += len(word) + 1

            for _ in range(topic_count):
                words.insert(int(self._rng.integers(0, len(words) + 1)), self.topic)
            plans.append(
                TweetPlan(
                    retweet_chain=chain,
                    reply_to=reply_to,
                    words=tuple(words),
                    topic_count=topic_count,
                    hashtags=hashtags,
                    links=links,
                    exclamation=skeleton.exclamation,
                    question=skeleton.question,
                )
            )
        return plans

    def build(self, label: Label | None) -> TrendingTopic:
        offsets = np.concatenate(([0.0], np.cumsum(self.gaps)))
        tweets = tuple(
            Tweet(
                text=render_tweet(plan),
                timestamp=self.start + int(offsets[i]),
                user=self.users[int(self.user_draws[i])],
                language=self.languages[int(self.language_draws[i])],
            )
            for i, plan in enumerate(self.plans)
        )
        return TrendingTopic(topic=self.topic, tweets=tweets, label=label)


def generate_synthetic_corpus(
    profiles: Mapping[Label, ClassProfile | Mapping[str, Any]] | None = None,
    trends_per_class: int | Mapping[Label, int] = 200,
    tweets_per_trend: int = 200,
    seed: int = 42,
    *,
    workers: int = 1,
) -> Corpus:
    """Generate a labelled corpus, bitwise reproducible for a given seed.

    Args:
        profiles: Profile per class (defaults to default_profiles())
        trends_per_class: Trends per class, or an explicit count per class
        tweets_per_trend: Tweets in every trend
        seed: Root seed; each class pool and each trend gets its own stream
        workers: Threads used to generate trends

    Raises:
        ProfileError: If a class has no profile or a parameter is invalid
    """
    raw_profiles = default_profiles() if profiles is None else profiles
    checked: dict[Label, ClassProfile] = {}
    for label in CLASSES:
        if label not in raw_profiles:
            raise ProfileError(label.value, "no profile given for this class")
        checked[label] = validate_profile(raw_profiles[label])

    if isinstance(trends_per_class, int):
        counts = {label: trends_per_class for label in CLASSES}
    else:
        counts = {label: int(trends_per_class.get(label, 0)) for label in CLASSES}
    if any(count < 0 for count in counts.values()):
        raise ProfileError("trends_per_class", "counts must be non-negative")
    if tweets_per_trend < 1:
        raise ProfileError("tweets_per_trend", f"must be positive, got {tweets_per_trend}")

    class_words = {
        label: pseudo_words(
            np.random.default_rng([seed, 0, position]), checked[label].vocabulary_pool
        )
        for position, label in enumerate(CLASSES)
    }

    labels = [label for label in CLASSES for _ in range(counts[label])]
    jobs = list(enumerate(labels))

    def make_trend(job: tuple[int, Label]) -> TrendingTopic:
        index, label = job
        rng = np.random.default_rng([seed, 1, index])
        topic = pseudo_words(rng, 1)[0].capitalize() + str(index)
        sampler = TrendSampler(
            checked[label], topic, class_words[label], tweets_per_trend, rng, trend_index=index
        )
        return sampler.build(label)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trends = list(pool.map(make_trend, jobs))
    else:
        trends = [make_trend(job) for job in jobs]

    logger.info(f"Generated {len(trends)} synthetic trends x {tweets_per_trend} tweets")
    return Corpus(tuple(trends))
