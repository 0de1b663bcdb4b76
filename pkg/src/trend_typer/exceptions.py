"""Exception hierarchy for the trend_typer library."""

from __future__ import annotations


class TrendTyperError(Exception):
    """Base exception for all trend_typer errors."""

    pass


class CorpusError(TrendTyperError):
    """Raised when tweets, trends or corpus files are invalid."""

    pass


class InvalidTweetError(CorpusError):
    """Raised when a tweet violates its invariants (e.g. empty text)."""

    pass


class InvalidTopicError(CorpusError):
    """Raised when a trending topic name is empty."""

    pass


class EmptyTrendError(CorpusError):
    """Raised when an operation needs at least one tweet and gets none."""

    pass


class CorpusFormatError(CorpusError):
    """Raised when a corpus line cannot be parsed.

    The line_number attribute is 1-based.
    """

    def __init__(self, message: str, line_number: int) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DuplicateTopicError(CorpusError):
    """Raised when two trends in a corpus share the same topic."""

    def __init__(self, topic: str) -> None:
        super().__init__(f"Duplicate topic: {topic!r}")
        self.topic = topic


class UnknownLabelError(CorpusError):
    """Raised when a label string is not one of the four trend types."""

    def __init__(self, label: str) -> None:
        super().__init__(f"Unknown label: {label!r}")
        self.label = label


class UnlabeledTrendError(CorpusError):
    """Raised when a gold label is required but the trend has none."""

    def __init__(self, topic: str) -> None:
        super().__init__(f"Trend {topic!r} has no label")
        self.topic = topic


class ClassifierError(TrendTyperError):
    """Raised when training or applying a classifier fails."""

    pass


class DegenerateTrainingError(ClassifierError):
    """Raised when a binary training set contains a single class."""

    pass


class DimensionMismatchError(ClassifierError):
    """Raised when vectors do not share the expected dimension."""

    pass


class MissingClassError(ClassifierError):
    """Raised when a class has no training trends."""

    def __init__(self, label: str) -> None:
        super().__init__(f"No training trends for class {label!r}")
        self.label = label


class ModelFormatError(ClassifierError):
    """Raised when a model file is corrupt or has an unsupported version."""

    pass


class EmptyCommitteeError(ClassifierError):
    """Raised when a committee is asked to vote with no members."""

    pass


class EvaluationError(TrendTyperError):
    """Raised when evaluation inputs are inconsistent."""

    pass


class MetricError(EvaluationError):
    """Raised when a metric is undefined for its input."""

    pass


class SplitError(EvaluationError):
    """Raised when a train/test split cannot be drawn."""

    pass


class ProfileError(TrendTyperError):
    """Raised when a synthetic class profile has an invalid parameter."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"Invalid profile field {field!r}: {message}")
        self.field = field


class ConfigError(TrendTyperError):
    """Raised when an environment setting cannot be parsed."""

    def __init__(self, variable: str, message: str) -> None:
        super().__init__(f"{variable}: {message}")
        self.variable = variable
