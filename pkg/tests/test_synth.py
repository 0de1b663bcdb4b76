"""Tests for the synthetic corpus generator."""

from __future__ import annotations

import io
import statistics

import numpy as np
import pytest

from trend_typer import (
    CLASSES,
    ClassProfile,
    Corpus,
    Label,
    ProfileError,
    class_counts,
    default_profiles,
    extract_features,
    generate_synthetic_corpus,
    parse_tweet_syntax,
    render_tweet,
    save_corpus,
    topic_occurrences,
)
from trend_typer.synth import (
    MAX_HASHTAG_POOL,
    MAX_VOCABULARY_POOL,
    TrendSampler,
    TweetPlan,
    pseudo_words,
)


def _bytes(corpus: Corpus) -> bytes:
    sink = io.BytesIO()
    save_corpus(corpus, sink)
    return sink.getvalue()


def _median(corpus: Corpus, label: Label, feature: str) -> float:
    return statistics.median(extract_features(t).get(feature) for t in corpus.with_label(label))


class TestProfiles:
    """Tests for ClassProfile validation."""

    def test_defaults_cover_all_classes(self) -> None:
        """Test that shipped profiles exist for every class."""
        assert set(default_profiles()) == set(CLASSES)

    def test_probability_out_of_range_names_field(self) -> None:
        """Test that a bad probability is reported by field name."""
        profiles = default_profiles()
        profiles[Label.MEME] = profiles[Label.MEME].model_copy(update={"retweet_prob": 1.5})
        with pytest.raises(ProfileError, match="retweet_prob"):
            generate_synthetic_corpus(profiles, trends_per_class=1, tweets_per_trend=5)

    def test_pool_size_must_be_positive(self) -> None:
        """Test that empty pools are rejected."""
        profiles: dict[Label, ClassProfile | dict[str, object]] = dict(default_profiles())
        data = profiles[Label.NEWS].model_dump()  # type: ignore[union-attr]
        data["user_pool"] = 0
        profiles[Label.NEWS] = data
        with pytest.raises(ProfileError, match="user_pool"):
            generate_synthetic_corpus(profiles, trends_per_class=1, tweets_per_trend=5)

    @pytest.mark.parametrize(
        ("field", "size"),
        [("hashtag_pool", MAX_HASHTAG_POOL + 1), ("vocabulary_pool", MAX_VOCABULARY_POOL + 1)],
    )
    def test_pool_larger_than_word_space(self, field: str, size: int) -> None:
        """Test that a pool with more words than can be spelled is rejected by name."""
        profiles = default_profiles()
        profiles[Label.MEME] = profiles[Label.MEME].model_copy(update={field: size})
        with pytest.raises(ProfileError, match=field):
            generate_synthetic_corpus(profiles, trends_per_class=1, tweets_per_trend=5)

    def test_pseudo_words_beyond_capacity(self) -> None:
        """Test that asking for more words than exist fails instead of looping."""
        assert len(pseudo_words(np.random.default_rng(0), 70, syllables=1)) == 70
        with pytest.raises(ValueError, match="70"):
            pseudo_words(np.random.default_rng(0), 71, syllables=1)

    def test_missing_class(self) -> None:
        """Test that every class needs a profile."""
        profiles = default_profiles()
        del profiles[Label.COMMEMORATIVE]
        with pytest.raises(ProfileError, match="commemorative"):
            generate_synthetic_corpus(profiles, trends_per_class=1, tweets_per_trend=5)


class TestClassCounts:
    """Tests for class_counts."""

    def test_balanced(self) -> None:
        """Test an even split with the remainder to the earliest classes."""
        assert list(class_counts("balanced", 10).values()) == [3, 3, 2, 2]

    def test_published_distribution(self) -> None:
        """Test counts proportional to 142/616/251/27."""
        counts = class_counts("published", 1036)
        assert counts == {
            Label.NEWS: 142,
            Label.ONGOING_EVENT: 616,
            Label.MEME: 251,
            Label.COMMEMORATIVE: 27,
        }
        small = class_counts("published", 40)
        assert sum(small.values()) == 40
        assert min(small.values()) >= 1
        assert max(small, key=lambda label: small[label]) is Label.ONGOING_EVENT

    def test_unknown_distribution(self) -> None:
        """Test that unknown distribution names are rejected."""
        with pytest.raises(ProfileError):
            class_counts("zipf", 100)


class TestGenerator:
    """Tests for generate_synthetic_corpus."""

    def test_shape(self, synthetic_corpus: Corpus) -> None:
        """Test trend counts, sizes and labels."""
        assert len(synthetic_corpus) == 48
        for label in CLASSES:
            assert len(synthetic_corpus.with_label(label)) == 12
        assert all(len(trend) == 60 for trend in synthetic_corpus)

    def test_bitwise_deterministic(self) -> None:
        """Test that a seed fixes the serialized corpus."""
        first = generate_synthetic_corpus(trends_per_class=3, tweets_per_trend=20, seed=5)
        second = generate_synthetic_corpus(
            trends_per_class=3, tweets_per_trend=20, seed=5, workers=3
        )
        assert _bytes(first) == _bytes(second)
        other = generate_synthetic_corpus(trends_per_class=3, tweets_per_trend=20, seed=6)
        assert _bytes(other) != _bytes(first)

    def test_per_class_counts(self) -> None:
        """Test an explicit count per class."""
        corpus = generate_synthetic_corpus(
            trends_per_class={
                Label.NEWS: 2,
                Label.ONGOING_EVENT: 1,
                Label.MEME: 0,
                Label.COMMEMORATIVE: 1,
            },
            tweets_per_trend=10,
        )
        assert [t.label for t in corpus] == [
            Label.NEWS,
            Label.NEWS,
            Label.ONGOING_EVENT,
            Label.COMMEMORATIVE,
        ]

    def test_tweets_are_valid_and_ordered(self, synthetic_corpus: Corpus) -> None:
        """Test tweet length limits and non-decreasing timestamps."""
        for trend in synthetic_corpus:
            timestamps = [tweet.timestamp for tweet in trend.tweets]
            assert timestamps == sorted(timestamps)
            assert all(0 < len(tweet.text) <= 280 for tweet in trend.tweets)

    def test_qualitative_class_signatures(self) -> None:
        """Test the feature orderings the default profiles encode."""
        corpus = generate_synthetic_corpus(trends_per_class=50, tweets_per_trend=200, seed=42)
        meme_rt = _median(corpus, Label.MEME, "retweet_ratio")
        oe_length = _median(corpus, Label.ONGOING_EVENT, "length_mean")
        for label in CLASSES:
            if label is not Label.MEME:
                assert meme_rt > _median(corpus, label, "retweet_ratio")
            if label is not Label.ONGOING_EVENT:
                assert oe_length < _median(corpus, label, "length_mean")


class TestRoundTrip:
    """Tests that generated text re-parses to the intended syntax."""

    @pytest.mark.parametrize("label", list(CLASSES))
    def test_every_tweet_reparses(self, label: Label) -> None:
        """Test plan and parse agree on every facet for every tweet."""
        profile = default_profiles()[label]
        rng = np.random.default_rng(17)
        words = pseudo_words(np.random.default_rng(1), profile.vocabulary_pool)
        sampler = TrendSampler(profile, "Kovaribe17", words, 300, rng, trend_index=17)
        for plan in sampler.plans:
            text = render_tweet(plan)
            syntax = parse_tweet_syntax(text)
            assert syntax.retweet_depth == len(plan.retweet_chain)
            assert syntax.retweeted_users == plan.retweet_chain
            assert syntax.is_reply == (plan.reply_to is not None)
            assert syntax.hashtags == plan.hashtags
            assert syntax.link_count == len(plan.links)
            assert syntax.has_exclamation == plan.exclamation
            assert syntax.has_question == plan.question
            assert topic_occurrences(text, "Kovaribe17") == plan.topic_count
            assert len(text) <= 280

    def test_render_layout(self) -> None:
        """Test the textual layout of a plan."""
        plan = TweetPlan(
            retweet_chain=("a", "b"),
            reply_to=None,
            words=("hello", "Topic1"),
            topic_count=1,
            hashtags=("#x",),
            links=("http://t.co/00000001",),
            exclamation=True,
            question=False,
        )
        assert render_tweet(plan) == "RT @a: RT @b: hello Topic1! #x http://t.co/00000001"
