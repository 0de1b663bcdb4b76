"""Data models for the trend_typer library."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum

from trend_typer.exceptions import (
    DuplicateTopicError,
    EmptyTrendError,
    InvalidTopicError,
    InvalidTweetError,
    UnknownLabelError,
)

MAX_TWEET_LENGTH = 280


class Label(str, Enum):
    """The four trend types, in tie-break order."""

    NEWS = "news"
    ONGOING_EVENT = "ongoing_event"
    MEME = "meme"
    COMMEMORATIVE = "commemorative"

    @property
    def short(self) -> str:
        """Column code used in tabular output (N, OE, M, C)."""
        return _SHORT_CODES[self]

    @classmethod
    def parse(cls, value: str) -> Label:
        """Map a canonical label string to a Label."""
        try:
            return cls(value)
        except ValueError as e:
            raise UnknownLabelError(value) from e


_SHORT_CODES = {
    Label.NEWS: "N",
    Label.ONGOING_EVENT: "OE",
    Label.MEME: "M",
    Label.COMMEMORATIVE: "C",
}

# Fixed class order; argmax ties resolve to the earliest class.
CLASSES: tuple[Label, ...] = tuple(Label)


class Representation(str, Enum):
    """Vector representation a classifier is trained on."""

    SOCIAL = "social"
    BOW = "bow"


@dataclass(frozen=True)
class Tweet:
    """One message of a trend."""

    text: str
    timestamp: int
    user: str
    language: str = ""

    def __post_init__(self) -> None:
        if not self.text:
            raise InvalidTweetError("Tweet text must not be empty")
        if len(self.text) > MAX_TWEET_LENGTH:
            raise InvalidTweetError(
                f"Tweet text has {len(self.text)} characters (max {MAX_TWEET_LENGTH})"
            )
        if self.timestamp < 0:
            raise InvalidTweetError(f"Negative timestamp: {self.timestamp}")


@dataclass(frozen=True)
class TweetSyntax:
    """Microblog syntax facets recovered from a tweet's text."""

    retweet_depth: int
    retweeted_users: tuple[str, ...]
    mentioned_users: tuple[str, ...]
    is_reply: bool
    hashtags: tuple[str, ...]
    link_count: int
    has_exclamation: bool
    has_question: bool
    char_length: int

    @property
    def is_retweet(self) -> bool:
        return self.retweet_depth >= 1


@dataclass(frozen=True)
class TrendingTopic:
    """A trending term plus the earliest tweets that made it trend."""

    topic: str
    tweets: tuple[Tweet, ...]
    label: Label | None = None

    def __post_init__(self) -> None:
        if not self.topic:
            raise InvalidTopicError("Trend topic must not be empty")
        if not self.tweets:
            raise EmptyTrendError(f"Trend {self.topic!r} has no tweets")

    def __len__(self) -> int:
        return len(self.tweets)

    @property
    def time_span(self) -> int:
        """Seconds between the earliest and the latest tweet."""
        timestamps = [tweet.timestamp for tweet in self.tweets]
        return max(timestamps) - min(timestamps)


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of trends with unique topics."""

    trends: tuple[TrendingTopic, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for trend in self.trends:
            if trend.topic in seen:
                raise DuplicateTopicError(trend.topic)
            seen.add(trend.topic)

    def __len__(self) -> int:
        return len(self.trends)

    def __iter__(self) -> Iterator[TrendingTopic]:
        return iter(self.trends)

    def subset(self, indices: Sequence[int]) -> Corpus:
        """Corpus made of the trends at the given positions."""
        return Corpus(tuple(self.trends[i] for i in indices))

    def with_label(self, label: Label) -> list[TrendingTopic]:
        return [trend for trend in self.trends if trend.label is label]
