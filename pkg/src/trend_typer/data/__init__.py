"""Data files shipped with trend_typer."""
