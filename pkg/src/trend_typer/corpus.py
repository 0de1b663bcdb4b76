"""Line-delimited JSON codec for trend corpora.

Each line holds one trend:

    {"topic": "Anfield", "label": "ongoing_event",
     "tweets": [{"text": "...", "timestamp": 1299000000, "user": "u1", "lang": "en"}]}

The label key is optional.
"""

from __future__ import annotations

import json
import logging
from typing import IO

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from trend_typer.exceptions import (
    CorpusError,
    CorpusFormatError,
    DuplicateTopicError,
    UnknownLabelError,
)
from trend_typer.models import Corpus, Label, TrendingTopic, Tweet

logger = logging.getLogger(__name__)


class TweetRecord(BaseModel):
    """Wire form of a tweet."""

    model_config = ConfigDict(extra="ignore")

    text: str = Field(min_length=1)
    timestamp: int = Field(ge=0)
    user: str
    lang: str = ""


class TrendRecord(BaseModel):
    """Wire form of a trend (one corpus line)."""

    model_config = ConfigDict(extra="ignore")

    topic: str = Field(min_length=1)
    label: str | None = None
    tweets: list[TweetRecord] = Field(min_length=1)


def _format_validation_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "record"
    return f"{location}: {first['msg']}"


def _to_trend(record: TrendRecord) -> TrendingTopic:
    label = Label.parse(record.label) if record.label is not None else None
    tweets = tuple(
        Tweet(text=t.text, timestamp=t.timestamp, user=t.user, language=t.lang)
        for t in record.tweets
    )
    return TrendingTopic(topic=record.topic, tweets=tweets, label=label)


def _to_record(trend: TrendingTopic) -> dict[str, object]:
    record: dict[str, object] = {"topic": trend.topic}
    if trend.label is not None:
        record["label"] = trend.label.value
    record["tweets"] = [
        {"text": t.text, "timestamp": t.timestamp, "user": t.user, "lang": t.language}
        for t in trend.tweets
    ]
    return record


def load_corpus(source: IO[bytes]) -> Corpus:
    """Read a corpus from a UTF-8 JSONL byte stream.

    Blank lines are skipped. Tweets keep their file order.

    Raises:
        CorpusFormatError: If a line is not a valid trend record
        DuplicateTopicError: If two lines share a topic
        UnknownLabelError: If a label is not one of the four trend types
    """
    trends: list[TrendingTopic] = []
    seen: set[str] = set()

    for line_number, raw in enumerate(source, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise CorpusFormatError(f"invalid UTF-8: {e}", line_number) from e
        if not line.strip():
            continue

        try:
            record = TrendRecord.model_validate_json(line)
        except ValidationError as e:
            raise CorpusFormatError(_format_validation_error(e), line_number) from e

        if record.topic in seen:
            raise DuplicateTopicError(record.topic)
        seen.add(record.topic)

        try:
            trends.append(_to_trend(record))
        except UnknownLabelError:
            raise
        except CorpusError as e:
            raise CorpusFormatError(str(e), line_number) from e

    logger.info(f"Loaded {len(trends)} trends")
    return Corpus(tuple(trends))


def save_corpus(corpus: Corpus, sink: IO[bytes]) -> None:
    """Write a corpus as UTF-8 JSONL, one trend per line."""
    for trend in corpus:
        line = json.dumps(_to_record(trend), ensure_ascii=False)
        sink.write(line.encode("utf-8") + b"\n")
    sink.flush()
    logger.info(f"Saved {len(corpus)} trends")
