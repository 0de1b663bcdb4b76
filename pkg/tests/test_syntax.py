"""Tests for microblog syntax parsing."""

from __future__ import annotations

import pytest
from conftest import INTERPOL_TWEETS

from trend_typer import InvalidTopicError, InvalidTweetError
from trend_typer.syntax import parse_tweet_syntax, strip_retweet_prefixes, topic_occurrences


class TestRetweetChain:
    """Tests for RT prefix scanning."""

    def test_two_level_chain(self) -> None:
        """Test that nested RT prefixes give depth 2 in chain order."""
        syntax = parse_tweet_syntax(INTERPOL_TWEETS[3])
        assert syntax.retweet_depth == 2
        assert syntax.retweeted_users == ("u2", "u1")
        assert syntax.is_retweet
        assert not syntax.is_reply

    def test_space_separated_prefix(self) -> None:
        """Test that 'RT @user ' without a colon still counts."""
        syntax = parse_tweet_syntax("RT @someone great point")
        assert syntax.retweet_depth == 1
        assert syntax.retweeted_users == ("someone",)

    def test_rt_in_the_middle_is_not_a_retweet(self) -> None:
        """Test that only prefixes at the start are scanned."""
        syntax = parse_tweet_syntax("I agree RT @u1: something")
        assert syntax.retweet_depth == 0
        assert syntax.mentioned_users == ("u1",)

    def test_username_longer_than_15_chars_breaks_chain(self) -> None:
        """Test that the username grammar caps at 15 characters."""
        syntax = parse_tweet_syntax("RT @abcdefghijklmnopq: text")
        assert syntax.retweet_depth == 0

    def test_strip_is_idempotent(self) -> None:
        """Test that reparsing the residual text gives depth 0."""
        residual = strip_retweet_prefixes(INTERPOL_TWEETS[3])
        assert residual.startswith("Interpol issues")
        assert parse_tweet_syntax(residual).retweet_depth == 0
        assert strip_retweet_prefixes(residual) == residual

    def test_chain_users_are_not_mentions(self) -> None:
        """Test that mentions come from the text after the chain."""
        syntax = parse_tweet_syntax("RT @u1: thanks @u7 and @u8")
        assert syntax.retweeted_users == ("u1",)
        assert syntax.mentioned_users == ("u7", "u8")


class TestFacets:
    """Tests for the remaining syntax facets."""

    def test_reply(self) -> None:
        """Test a reply with a question mark."""
        syntax = parse_tweet_syntax(INTERPOL_TWEETS[2])
        assert syntax.is_reply
        assert syntax.retweet_depth == 0
        assert syntax.has_question
        assert not syntax.has_exclamation

    def test_reply_after_leading_space(self) -> None:
        """Test that leading whitespace does not hide a reply."""
        assert parse_tweet_syntax("   @bob yes").is_reply

    def test_email_is_not_a_reply(self) -> None:
        """Test that an embedded @ is not a reply mention."""
        syntax = parse_tweet_syntax("mail me at me@example.com")
        assert not syntax.is_reply
        assert syntax.mentioned_users == ()

    def test_hashtags_and_punctuation(self) -> None:
        """Test hashtag extraction with lowercasing and both punctuation flags."""
        syntax = parse_tweet_syntax("happy #WorldBookDay everyone! what are you reading?")
        assert syntax.hashtags == ("#worldbookday",)
        assert syntax.has_exclamation
        assert syntax.has_question
        assert syntax.retweet_depth == 0

    def test_hashtag_ends_at_non_word_character(self) -> None:
        """Test that a hashtag token stops at punctuation."""
        assert parse_tweet_syntax("#Libya, #egypt!").hashtags == ("#libya", "#egypt")

    def test_links(self) -> None:
        """Test that http and https prefixes are both counted."""
        syntax = parse_tweet_syntax("see http://bit.ly/a and https://t.co/b")
        assert syntax.link_count == 2

    def test_plain_text(self) -> None:
        """Test that plain text has no facets."""
        syntax = parse_tweet_syntax("plain text")
        assert syntax.retweet_depth == 0
        assert syntax.retweeted_users == ()
        assert syntax.mentioned_users == ()
        assert not syntax.is_reply
        assert syntax.hashtags == ()
        assert syntax.link_count == 0
        assert not syntax.has_exclamation
        assert not syntax.has_question
        assert syntax.char_length == 10

    def test_length_counts_code_points(self) -> None:
        """Test that length is in code points, not bytes."""
        assert parse_tweet_syntax("año ✓").char_length == 5

    def test_empty_text_raises(self) -> None:
        """Test that empty text is rejected."""
        with pytest.raises(InvalidTweetError):
            parse_tweet_syntax("")

    @pytest.mark.parametrize(
        "text",
        ["RT @a: @b hi", "@b RT @a: hi", "RT @a RT @b @c", " RT @a: x", "@x"],
    )
    def test_reply_and_retweet_exclusive(self, text: str) -> None:
        """Test that no text parses as both a reply and a retweet."""
        syntax = parse_tweet_syntax(text)
        assert not (syntax.is_reply and syntax.is_retweet)


class TestTopicOccurrences:
    """Tests for topic_occurrences."""

    def test_case_insensitive(self) -> None:
        """Test that matching ignores case."""
        assert topic_occurrences("Anfield anfield ANFIELD", "Anfield") == 3

    def test_no_match(self) -> None:
        """Test a text without the topic."""
        assert topic_occurrences("no match here", "Anfield") == 0

    def test_non_overlapping(self) -> None:
        """Test that occurrences do not overlap."""
        assert topic_occurrences("aaaa", "aa") == 2
        assert topic_occurrences("aaa", "aa") == 1

    def test_regex_characters_are_literal(self) -> None:
        """Test that topics with regex metacharacters are matched literally."""
        assert topic_occurrences("c++ and C++", "C++") == 2
        assert topic_occurrences("#nowplaying x", "#NowPlaying") == 1

    def test_bounded_by_length(self) -> None:
        """Test the count never exceeds len(text) // len(topic)."""
        for text, topic in [("ababab", "ab"), ("xxxxx", "xx"), ("a", "abc")]:
            assert topic_occurrences(text, topic) <= len(text) // len(topic)

    def test_empty_topic_raises(self) -> None:
        """Test that an empty topic is rejected."""
        with pytest.raises(InvalidTopicError):
            topic_occurrences("text", "")
