"""Trend Typer - classify trending topics as news, ongoing events, memes or commemoratives.

Example usage:
    from trend_typer import generate_synthetic_corpus, train_one_vs_all, predict

    corpus = generate_synthetic_corpus(trends_per_class=50, seed=1)
    model = train_one_vs_all(corpus)
    print(predict(model, corpus.trends[0]))

    # Committee of a social-feature and a bag-of-words model
    bow = train_one_vs_all(corpus, Representation.BOW, stopwords=load_stopwords())
    label, sums = committee_predict([margins(model, t), margins(bow, t)])
"""

from trend_typer.analysis import (
    CorpusStatistics,
    QuartileReport,
    QuartileRow,
    analyze_distributions,
    corpus_statistics,
)
from trend_typer.classifier import (
    LinearModel,
    MarginReport,
    OneVsAllModel,
    Scaler,
    committee_predict,
    load_model,
    margins,
    predict,
    save_model,
    train_binary,
    train_one_vs_all,
)
from trend_typer.corpus import load_corpus, save_corpus
from trend_typer.evaluation import (
    COMMITTEE,
    CrossValidationReport,
    EvalReport,
    Split,
    build_report,
    cohen_kappa,
    confusion_matrix,
    cross_validate,
    evaluate,
    fleiss_kappa,
    majority_vote,
    ratings_matrix,
    split_train_test,
)
from trend_typer.exceptions import (
    ClassifierError,
    ConfigError,
    CorpusError,
    CorpusFormatError,
    DegenerateTrainingError,
    DimensionMismatchError,
    DuplicateTopicError,
    EmptyCommitteeError,
    EmptyTrendError,
    EvaluationError,
    InvalidTopicError,
    InvalidTweetError,
    MetricError,
    MissingClassError,
    ModelFormatError,
    ProfileError,
    SplitError,
    TrendTyperError,
    UnknownLabelError,
    UnlabeledTrendError,
)
from trend_typer.features import (
    FEATURE_NAMES,
    FEATURE_SHORT_NAMES,
    SocialFeatureVector,
    arithmetic_mean,
    extract_corpus_features,
    extract_features,
    shannon_index,
    spread_velocity,
)
from trend_typer.models import (
    CLASSES,
    Corpus,
    Label,
    Representation,
    TrendingTopic,
    Tweet,
    TweetSyntax,
)
from trend_typer.synth import (
    ClassProfile,
    TweetPlan,
    class_counts,
    default_profiles,
    generate_synthetic_corpus,
    render_tweet,
)
from trend_typer.syntax import parse_tweet_syntax, strip_retweet_prefixes, topic_occurrences
from trend_typer.text import (
    TermFrequencyVector,
    Vocabulary,
    load_stopwords,
    tf_vector,
    tokenize,
    tokenize_filtered,
    top_terms,
)

__version__ = "0.1.0"

__all__ = [
    # Domain types
    "CLASSES",
    "Label",
    "Representation",
    "Tweet",
    "TweetSyntax",
    "TrendingTopic",
    "Corpus",
    # Parsing and corpus files
    "parse_tweet_syntax",
    "strip_retweet_prefixes",
    "topic_occurrences",
    "load_corpus",
    "save_corpus",
    # Representations
    "FEATURE_NAMES",
    "FEATURE_SHORT_NAMES",
    "SocialFeatureVector",
    "extract_features",
    "extract_corpus_features",
    "shannon_index",
    "arithmetic_mean",
    "spread_velocity",
    "TermFrequencyVector",
    "Vocabulary",
    "tokenize",
    "tokenize_filtered",
    "tf_vector",
    "top_terms",
    "load_stopwords",
    # Classifier
    "LinearModel",
    "Scaler",
    "OneVsAllModel",
    "MarginReport",
    "train_binary",
    "train_one_vs_all",
    "margins",
    "predict",
    "committee_predict",
    "save_model",
    "load_model",
    # Evaluation
    "COMMITTEE",
    "EvalReport",
    "CrossValidationReport",
    "Split",
    "confusion_matrix",
    "cohen_kappa",
    "fleiss_kappa",
    "build_report",
    "majority_vote",
    "ratings_matrix",
    "split_train_test",
    "evaluate",
    "cross_validate",
    # Synthetic data and analysis
    "ClassProfile",
    "TweetPlan",
    "default_profiles",
    "class_counts",
    "generate_synthetic_corpus",
    "render_tweet",
    "QuartileRow",
    "QuartileReport",
    "CorpusStatistics",
    "analyze_distributions",
    "corpus_statistics",
    # Exceptions
    "TrendTyperError",
    "CorpusError",
    "InvalidTweetError",
    "InvalidTopicError",
    "EmptyTrendError",
    "CorpusFormatError",
    "DuplicateTopicError",
    "UnknownLabelError",
    "UnlabeledTrendError",
    "ClassifierError",
    "DegenerateTrainingError",
    "DimensionMismatchError",
    "MissingClassError",
    "ModelFormatError",
    "EmptyCommitteeError",
    "EvaluationError",
    "MetricError",
    "SplitError",
    "ProfileError",
    "ConfigError",
]
