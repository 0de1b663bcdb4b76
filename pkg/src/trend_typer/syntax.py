"""Parsing of microblog syntax: retweet chains, replies, mentions, hashtags, links."""

from __future__ import annotations

import re

from trend_typer.exceptions import InvalidTopicError, InvalidTweetError
from trend_typer.models import TweetSyntax

USERNAME = r"[A-Za-z0-9_]{1,15}"

# One link of a retweet chain: "RT @user:" or "RT @user " at the start of the text.
_RETWEET_PREFIX = re.compile(rf"\s*RT @({USERNAME})(?::|\s)\s*")
_REPLY = re.compile(rf"\s*@{USERNAME}(?![A-Za-z0-9_])")
_MENTION = re.compile(rf"(?<![A-Za-z0-9_])@({USERNAME})(?![A-Za-z0-9_])")
_HASHTAG = re.compile(r"#[A-Za-z0-9_]+")
_LINK = re.compile(r"https?://")


def _split_retweet_chain(text: str) -> tuple[list[str], str]:
    chain: list[str] = []
    position = 0
    while match := _RETWEET_PREFIX.match(text, position):
        chain.append(match.group(1))
        position = match.end()
    return chain, text[position:]


def strip_retweet_prefixes(text: str) -> str:
    """Return the text left after removing the leading RT chain."""
    return _split_retweet_chain(text)[1]


def parse_tweet_syntax(text: str) -> TweetSyntax:
    """Recover the syntax facets of a tweet.

    Args:
        text: Raw tweet text

    Returns:
        TweetSyntax with retweet chain, reply flag, mentions, hashtags,
        link count, punctuation flags and code-point length

    Raises:
        InvalidTweetError: If text is empty
    """
    if not text:
        raise InvalidTweetError("Cannot parse an empty tweet")

    chain, residual = _split_retweet_chain(text)
    return TweetSyntax(
        retweet_depth=len(chain),
        retweeted_users=tuple(chain),
        mentioned_users=tuple(_MENTION.findall(residual)),
        # An RT prefix always comes first, so a retweet is never a reply.
        is_reply=not chain and _REPLY.match(text) is not None,
        hashtags=tuple(tag.lower() for tag in _HASHTAG.findall(text)),
        link_count=len(_LINK.findall(text)),
        has_exclamation="!" in text,
        has_question="?" in text,
        char_length=len(text),
    )


def topic_occurrences(text: str, topic: str) -> int:
    """Count non-overlapping, case-insensitive occurrences of topic in text."""
    if not topic:
        raise InvalidTopicError("Topic must not be empty")
    return len(re.findall(re.escape(topic), text, flags=re.IGNORECASE))
