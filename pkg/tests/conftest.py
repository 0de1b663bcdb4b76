"""Pytest fixtures for trend_typer tests."""

from __future__ import annotations

import pytest
from helpers import make_trend

from trend_typer import Corpus, Label, TrendingTopic, generate_synthetic_corpus

INTERPOL_TWEETS = (
    "Interpol issues arrests warrants for Gaddafi & 15 senior Libyan officials. #Libya",
    "RT @u1: Interpol issues arrests warrants for Gaddafi & 15 senior Libyan officials. #Libya",
    "@u1 - so Interpol cannot act until he & family leave Libya, is that right? "
    "Assuming he is toppled?",
    "RT @u2: RT @u1: Interpol issues arrests warrants for Gaddafi & 15 senior Libyan "
    "officials. #Libya",
    "Interpol has issued international alert for Muammar Gaddafi & 15 other family "
    "members & close associates | Telegraph http://bit.ly/h9GwYI",
)


@pytest.fixture
def interpol_trend() -> TrendingTopic:
    """The five-tweet news example, posted by u1..u5 ten seconds apart."""
    return make_trend(
        "Interpol",
        INTERPOL_TWEETS,
        Label.NEWS,
        users=["u1", "u2", "u3", "u4", "u5"],
    )


@pytest.fixture
def small_corpus(interpol_trend: TrendingTopic) -> Corpus:
    """One hand-written trend per class."""
    return Corpus(
        (
            interpol_trend,
            make_trend(
                "Anfield",
                ["watching the game at Anfield", "Anfield is loud tonight!", "goal at anfield"],
                Label.ONGOING_EVENT,
                step=1,
            ),
            make_trend(
                "#nowplaying",
                ["RT @dj: #nowplaying lol", "RT @dj: #nowplaying lol", "#nowplaying winning"],
                Label.MEME,
            ),
            make_trend(
                "#worldbookday",
                ["happy #worldbookday everyone! what are you reading?", "happy #worldbookday"],
                Label.COMMEMORATIVE,
                languages=["en", "es"],
            ),
        )
    )


@pytest.fixture(scope="session")
def synthetic_corpus() -> Corpus:
    """Small balanced synthetic corpus shared across tests (read-only)."""
    return generate_synthetic_corpus(trends_per_class=12, tweets_per_trend=60, seed=7)
