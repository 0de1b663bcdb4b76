"""Command-line interface for trend_typer."""

from __future__ import annotations

import csv
import json
import logging
import sys
from collections.abc import Callable
from dataclasses import replace
from pathlib import Path
from typing import IO, Any, NoReturn, TypeVar

import click

from trend_typer import (
    CLASSES,
    FEATURE_SHORT_NAMES,
    Corpus,
    Label,
    OneVsAllModel,
    Representation,
    TrendTyperError,
    analyze_distributions,
    class_counts,
    committee_predict,
    corpus_statistics,
    cross_validate,
    evaluate,
    extract_corpus_features,
    fleiss_kappa,
    generate_synthetic_corpus,
    load_corpus,
    load_model,
    load_stopwords,
    majority_vote,
    margins,
    ratings_matrix,
    save_corpus,
    save_model,
    top_terms,
    train_one_vs_all,
)
from trend_typer.config import Settings, get_settings
from trend_typer.text import DEFAULT_TOP_TERMS

F = TypeVar("F", bound=Callable[..., Any])

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


def _fail(error: Exception) -> NoReturn:
    click.echo(click.style(f"Error: {error}", fg="red"), err=True)
    sys.exit(1)


def _settings(ctx: click.Context) -> Settings:
    return ctx.obj["settings"]


def _write_json(sink: IO[str], payload: Any) -> None:
    sink.write(json.dumps(payload, indent=2) + "\n")


def _stopwords(paths: tuple[Path, ...]) -> frozenset[str]:
    return load_stopwords(extra_paths=paths)


def _both_paths(out: str) -> tuple[Path, Path]:
    """File pair written for --rep both: <stem>-social<suffix>, <stem>-bow<suffix>."""
    path = Path(out)
    suffix = path.suffix or ".json"
    return (
        path.with_name(f"{path.stem}-social{suffix}"),
        path.with_name(f"{path.stem}-bow{suffix}"),
    )


def out_option(kind: str, mode: str = "w") -> Callable[[F], F]:
    return click.option(
        "--out", "sink", type=click.File(mode), default="-", help=f"Output {kind} ('-' for stdout)"
    )


in_option = click.option(
    "--in",
    "source",
    type=click.File("rb"),
    default="-",
    help="Input corpus (JSONL, '-' for stdin)",
)
c_option = click.option(
    "--C",
    "c",
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help="Hinge penalty C (default: TREND_TYPER_C or 5.0)",
)
stopwords_option = click.option(
    "--stopwords",
    "stopword_files",
    multiple=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Extra stopword file (one word per line); repeatable",
)


@click.group()
@click.version_option(package_name="trend-typer")
@click.option("--verbose", "-v", count=True, help="Log progress (-v info, -vv debug)")
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    default=None,
    help="Worker threads for feature extraction, training and generation",
)
@click.pass_context
def main(ctx: click.Context, verbose: int, workers: int | None) -> None:
    """Trending topic typing - classify trends as news, ongoing events, memes or commemoratives."""
    try:
        settings = get_settings()
    except TrendTyperError as e:
        _fail(e)

    if verbose >= 2:
        level: int | str = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = settings.log_level
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)

    if workers is not None:
        settings = replace(settings, workers=workers)
    ctx.obj = {"settings": settings}


@main.command()
@click.option("--seed", type=int, default=None, help="Random seed (default: TREND_TYPER_SEED)")
@click.option(
    "--trends-per-class",
    type=click.IntRange(min=1),
    default=200,
    help="Trends per class; with --distribution published, a quarter of the total",
)
@click.option("--tweets-per-trend", type=click.IntRange(min=1), default=200)
@click.option(
    "--distribution",
    type=click.Choice(["balanced", "published"]),
    default="balanced",
    help="Class balance of the generated corpus",
)
@out_option("JSONL", "wb")
@click.pass_context
def synth(
    ctx: click.Context,
    seed: int | None,
    trends_per_class: int,
    tweets_per_trend: int,
    distribution: str,
    sink: IO[bytes],
) -> None:
    """Generate a labelled synthetic corpus.

    Examples:

        trend-typer synth --seed 1 > corpus.jsonl

        trend-typer synth --distribution published --trends-per-class 100 --out skewed.jsonl
    """
    settings = _settings(ctx)
    try:
        counts: int | dict[Label, int] = trends_per_class
        if distribution == "published":
            counts = class_counts("published", trends_per_class * len(CLASSES))
        corpus = generate_synthetic_corpus(
            trends_per_class=counts,
            tweets_per_trend=tweets_per_trend,
            seed=settings.seed if seed is None else seed,
            workers=settings.workers,
        )
        save_corpus(corpus, sink)
    except TrendTyperError as e:
        _fail(e)


@main.command()
@in_option
@out_option("CSV")
@click.pass_context
def features(ctx: click.Context, source: IO[bytes], sink: IO[str]) -> None:
    """Write the 15 social features of every trend as CSV."""
    try:
        corpus = load_corpus(source)
        vectors = extract_corpus_features(corpus, workers=_settings(ctx).workers)
    except TrendTyperError as e:
        _fail(e)

    writer = csv.writer(sink)
    writer.writerow(["topic", "label", *FEATURE_SHORT_NAMES])
    for trend, vector in zip(corpus, vectors):
        label = trend.label.value if trend.label is not None else ""
        writer.writerow([trend.topic, label, *(f"{value:.6f}" for value in vector.values)])


@main.command()
@in_option
@click.option(
    "--rep",
    type=click.Choice(["social", "bow", "both"]),
    default="social",
    help="Representation; 'both' writes <stem>-social and <stem>-bow model files",
)
@c_option
@click.option("--seed", type=int, default=None, help="Training seed")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, allow_dash=True),
    default="-",
    help="Model file ('-' for stdout)",
)
@stopwords_option
@click.pass_context
def train(
    ctx: click.Context,
    source: IO[bytes],
    rep: str,
    c: float | None,
    seed: int | None,
    out: str,
    stopword_files: tuple[Path, ...],
) -> None:
    """Train a one-vs-all classifier on a labelled corpus."""
    settings = _settings(ctx)
    if rep == "both" and out == "-":
        _fail(click.UsageError("--rep both writes two files; give --out FILE"))
    try:
        corpus = load_corpus(source)
        stopwords = _stopwords(stopword_files) if rep != "social" else frozenset()
        kinds = (
            [Representation.SOCIAL, Representation.BOW] if rep == "both" else [Representation(rep)]
        )
        models = [
            train_one_vs_all(
                corpus,
                kind,
                c=settings.c if c is None else c,
                seed=settings.seed if seed is None else seed,
                stopwords=stopwords,
                workers=settings.workers,
            )
            for kind in kinds
        ]
        if rep != "both" and out == "-":
            save_model(models[0], click.get_binary_stream("stdout"))
            return
        paths = _both_paths(out) if rep == "both" else (Path(out),)
        for model, path in zip(models, paths):
            with path.open("wb") as sink:
                save_model(model, sink)
            logger.info(f"Wrote {model.representation.value} model to {path}")
    except (TrendTyperError, OSError) as e:
        _fail(e)


@main.command()
@click.option("--model", "model_file", type=click.File("rb"), required=True, help="Model file")
@click.option(
    "--model2", "model2_file", type=click.File("rb"), default=None, help="Second committee member"
)
@in_option
@out_option("CSV")
def predict(
    model_file: IO[bytes], model2_file: IO[bytes] | None, source: IO[bytes], sink: IO[str]
) -> None:
    """Predict the class of every trend.

    With --model2 the two models vote as a committee and the margin columns
    hold the summed margins.
    """
    try:
        models = [load_model(model_file)]
        if model2_file is not None:
            models.append(load_model(model2_file))
        corpus = load_corpus(source)

        writer = csv.writer(sink)
        writer.writerow(["topic", "predicted", *(f"margin_{label.short}" for label in CLASSES)])
        for trend in corpus:
            predicted, scores = committee_predict([margins(model, trend) for model in models])
            writer.writerow(
                [trend.topic, predicted.value, *(repr(float(scores[label])) for label in CLASSES)]
            )
    except TrendTyperError as e:
        _fail(e)


@main.command(name="evaluate")
@in_option
@click.option(
    "--model",
    "model_files",
    type=click.File("rb"),
    multiple=True,
    help="Evaluate trained model(s) on the input instead of running splits; repeat for a committee",
)
@click.option("--rep", type=click.Choice(["social", "bow", "both"]), default="social")
@c_option
@click.option("--seed", type=int, default=None, help="Seed for splits and training")
@click.option("--train-size", type=click.IntRange(min=1), default=None)
@click.option("--repeats", type=click.IntRange(min=1), default=None)
@stopwords_option
@out_option("JSON")
@click.pass_context
def evaluate_command(
    ctx: click.Context,
    source: IO[bytes],
    model_files: tuple[IO[bytes], ...],
    rep: str,
    c: float | None,
    seed: int | None,
    train_size: int | None,
    repeats: int | None,
    stopword_files: tuple[Path, ...],
    sink: IO[str],
) -> None:
    """Run the repeated random-split protocol and report accuracy and kappa.

    Examples:

        trend-typer synth | trend-typer evaluate --rep both

        trend-typer evaluate --in test.jsonl --model social.json --model bow.json
    """
    settings = _settings(ctx)
    try:
        corpus = load_corpus(source)
        if model_files:
            models: list[OneVsAllModel] = [load_model(f) for f in model_files]
            _write_json(sink, evaluate(models, list(corpus)).to_dict())
            return

        reports = cross_validate(
            corpus,
            rep,
            c=settings.c if c is None else c,
            seed=settings.seed if seed is None else seed,
            train_size=settings.train_size if train_size is None else train_size,
            repeats=settings.repeats if repeats is None else repeats,
            stopwords=_stopwords(stopword_files) if rep != "social" else frozenset(),
            workers=settings.workers,
        )
        payload = {name: report.to_dict() for name, report in reports.items()}
        _write_json(sink, payload)
        for name, report in reports.items():
            logger.info(f"{name}: accuracy {report.accuracy:.3f}, kappa {report.cohen_kappa:.3f}")
    except TrendTyperError as e:
        _fail(e)


def _write_top_terms(corpus: Corpus, k: int, stopwords: frozenset[str], sink: IO[str]) -> None:
    writer = csv.writer(sink)
    writer.writerow(["class", "rank", "term", "count"])
    for label in CLASSES:
        for rank, (term, count) in enumerate(top_terms(corpus, label, k, stopwords), start=1):
            writer.writerow([label.value, rank, term, count])


@main.command()
@in_option
@click.option(
    "--top-terms",
    "k",
    type=click.IntRange(min=1),
    default=None,
    help="Emit the k highest-frequency terms per class instead of quartiles",
)
@stopwords_option
@out_option("CSV")
@click.pass_context
def analyze(
    ctx: click.Context,
    source: IO[bytes],
    k: int | None,
    stopword_files: tuple[Path, ...],
    sink: IO[str],
) -> None:
    """Per-class quartiles (min, Q1, median, Q3, max) of every social feature."""
    try:
        corpus = load_corpus(source)
        if k is not None:
            _write_top_terms(corpus, k, _stopwords(stopword_files), sink)
            return
        report = analyze_distributions(corpus, workers=_settings(ctx).workers)
    except TrendTyperError as e:
        _fail(e)

    writer = csv.writer(sink)
    writer.writerow(["class", "feature", "min", "q1", "median", "q3", "max"])
    for row in report.rows:
        writer.writerow(
            [
                row.label.value,
                row.feature,
                *(f"{v:.6f}" for v in (row.minimum, row.q1, row.median, row.q3, row.maximum)),
            ]
        )


@main.command(name="top-terms")
@in_option
@click.option("-k", type=click.IntRange(min=1), default=DEFAULT_TOP_TERMS, help="Terms per class")
@stopwords_option
@out_option("CSV")
def top_terms_command(
    source: IO[bytes], k: int, stopword_files: tuple[Path, ...], sink: IO[str]
) -> None:
    """Most frequent terms of each class after stopword removal."""
    try:
        _write_top_terms(load_corpus(source), k, _stopwords(stopword_files), sink)
    except TrendTyperError as e:
        _fail(e)


@main.command()
@in_option
@out_option("JSON")
def stats(source: IO[bytes], sink: IO[str]) -> None:
    """Describe a corpus: trends, tweets, users, languages and classes."""
    try:
        _write_json(sink, corpus_statistics(load_corpus(source)).to_dict())
    except TrendTyperError as e:
        _fail(e)


def _annotation_label(value: str) -> Label:
    for label in CLASSES:
        if value.upper() == label.short:
            return label
    return Label.parse(value.strip().lower())


@main.command()
@click.option(
    "--in",
    "source",
    type=click.File("r"),
    default="-",
    help="Annotation CSV: item,label1,label2,... (header row optional)",
)
@out_option("JSON")
def agreement(source: IO[str], sink: IO[str]) -> None:
    """Fleiss' kappa and majority labels of a multi-annotator labelling."""
    rows = [row for row in csv.reader(source) if row]
    if rows and rows[0][0].strip().lower() == "item":
        rows = rows[1:]
    try:
        if not rows:
            raise TrendTyperError("Annotation file has no items")
        items = [row[0] for row in rows]
        annotations = [
            [_annotation_label(cell) for cell in row[1:] if cell.strip()] for row in rows
        ]
        raters = len(annotations[0])
        kappa = fleiss_kappa(ratings_matrix(annotations), raters)
        payload = {
            "items": len(items),
            "raters": raters,
            "fleiss_kappa": kappa,
            "majority": {
                item: majority_vote(labels).value for item, labels in zip(items, annotations)
            },
        }
    except TrendTyperError as e:
        _fail(e)
    _write_json(sink, payload)


if __name__ == "__main__":
    main()
