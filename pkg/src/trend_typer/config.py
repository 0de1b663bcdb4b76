"""
Configuration management for trend_typer.
Loads defaults from environment variables (and a .env file, if present).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from trend_typer.classifier import DEFAULT_C
from trend_typer.evaluation import DEFAULT_REPEATS, DEFAULT_TRAIN_SIZE
from trend_typer.exceptions import ConfigError

# Load environment variables from .env file
load_dotenv()

DEFAULT_SEED = 42
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    """Defaults shared by the CLI and library entry points."""

    c: float = DEFAULT_C
    seed: int = DEFAULT_SEED
    train_size: int = DEFAULT_TRAIN_SIZE
    repeats: int = DEFAULT_REPEATS
    workers: int = DEFAULT_WORKERS
    log_level: str = DEFAULT_LOG_LEVEL


def _read_int(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(name, f"expected an integer, got {raw!r}") from e
    if value < minimum:
        raise ConfigError(name, f"must be >= {minimum}, got {value}")
    return value


def _read_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = float(raw)
    except ValueError as e:
        raise ConfigError(name, f"expected a number, got {raw!r}") from e
    if not value > 0:
        raise ConfigError(name, f"must be positive, got {value}")
    return value


def get_settings() -> Settings:
    """
    Load settings from TREND_TYPER_* environment variables.
    Missing variables fall back to the built-in defaults.
    Raises ConfigError if a variable is set to an invalid value.
    """
    log_level = os.getenv("TREND_TYPER_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(log_level), int):
        raise ConfigError("TREND_TYPER_LOG_LEVEL", f"unknown level {log_level!r}")

    return Settings(
        c=_read_float("TREND_TYPER_C", DEFAULT_C),
        seed=_read_int("TREND_TYPER_SEED", DEFAULT_SEED, minimum=0),
        train_size=_read_int("TREND_TYPER_TRAIN_SIZE", DEFAULT_TRAIN_SIZE, minimum=1),
        repeats=_read_int("TREND_TYPER_REPEATS", DEFAULT_REPEATS, minimum=1),
        workers=_read_int("TREND_TYPER_WORKERS", DEFAULT_WORKERS, minimum=1),
        log_level=log_level,
    )
