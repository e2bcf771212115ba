"""Richardson extrapolation over halving ladders."""
from __future__ import annotations

import numpy as np

from .errors import FitError


def richardson(values, orders, ratio: float = 2.0):
    """Eliminate leading error terms h^p, p in ``orders``, from a ladder.

    ``values[k]`` is computed at step h / ratio^k (finest last). Each order
    in turn is removed by  v_k + (v_k - v_{k-1}) / (ratio^p - 1).
    Returns (extrapolated value, |finest - extrapolated|).
    """
    v = np.asarray(values, dtype=float)
    orders = tuple(orders)
    if v.size < 2:
        raise FitError("Richardson extrapolation needs at least 2 ladder values")
    if v.size < len(orders) + 1:
        raise FitError(f"{len(orders)} orders need at least {len(orders) + 1} values, got {v.size}")
    d = np.diff(v)
    if np.any(d > 0) and np.any(d < 0):
        raise FitError("ladder is not monotone")
    table = v
    for p in orders:
        f = ratio ** p - 1.0
        table = table[1:] + (table[1:] - table[:-1]) / f
    best = float(table[-1])
    return best, abs(float(v[-1]) - best)
