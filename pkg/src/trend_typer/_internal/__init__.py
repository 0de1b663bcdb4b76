"""Internal implementation details for trend_typer."""

from trend_typer._internal.hinge import hinge_objective, hinge_subgradient

__all__ = ["hinge_objective", "hinge_subgradient"]
