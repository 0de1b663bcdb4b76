"""Soft-margin hinge objective (1/2)||w||^2 + C * sum(max(0, 1 - y(w.x + b)))."""

from __future__ import annotations

import numpy as np


def hinge_objective(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray, c: float
) -> float:
    """Primal objective value; the bias is not regularized."""
    slack = np.maximum(0.0, 1.0 - y * (x @ weights + bias))
    return float(0.5 * weights @ weights + c * slack.sum())


def hinge_subgradient(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray, c: float
) -> tuple[np.ndarray, float]:
    """A subgradient (d/dw, d/db) of the objective.

    Terms sitting exactly on the margin are treated as inactive.
    """
    active = y * (x @ weights + bias) < 1.0
    grad_w = weights - c * (y[active, None] * x[active]).sum(axis=0)
    grad_b = -c * float(y[active].sum())
    return grad_w, grad_b
