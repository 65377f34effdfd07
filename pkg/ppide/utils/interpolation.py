"""Lagrange interpolation weights shared by the m- and alpha-interpolating schemes."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np


def lagrange_weights(nodes: Sequence[float], target: float) -> np.ndarray:
    """Return the Lagrange basis values ``L_j(target)`` for distinct *nodes*.

    At a node the weight vector is exactly the unit vector, so interpolated
    data is reproduced bit for bit.

    Raises:
        ValueError: If two abscissae coincide.
    """
    xs = [float(x) for x in nodes]
    if len(set(xs)) != len(xs):
        raise ValueError(f"duplicate abscissae in {xs}")
    weights = np.ones(len(xs))
    for j, xj in enumerate(xs):
        for k, xk in enumerate(xs):
            if k != j:
                weights[j] *= (target - xk) / (xj - xk)
    return weights


def combine(weights: np.ndarray, values: Sequence[np.ndarray]) -> np.ndarray:
    """Return ``sum_j weights[j] * values[j]`` pointwise."""
    out = np.zeros_like(np.asarray(values[0], dtype=float))
    for w, v in zip(weights, values):
        if w != 0.0:
            out = out + w * np.asarray(v, dtype=float)
    return out
