"""Convergence-order measurement helpers.

Used by the test suite and the limit study to turn sequences of errors
under grid/step refinement into a fitted order with a fit-quality number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OrderFit:
    """Least-squares power-law fit error ~ C * scale^order."""

    order: float
    log10_residual: float  # rms deviation of log10(error) from the fit line


def fit_order(scales, errors) -> OrderFit:
    """Fit errors against scales (h, dt, 1/c ...) in log-log space.

    The returned order is positive when errors shrink as scales shrink.
    """
    s = np.asarray(scales, dtype=float)
    e = np.asarray(errors, dtype=float)
    if s.shape != e.shape or s.size < 2:
        raise ValueError("need at least two (scale, error) pairs of equal length")
    if np.any(s <= 0) or np.any(e <= 0):
        raise ValueError("scales and errors must be positive for a log-log fit")
    x = np.log10(s)
    y = np.log10(e)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    rms = math.sqrt(float(np.mean(resid**2)))
    return OrderFit(order=float(slope), log10_residual=rms)


def halving_orders(errors) -> list[float]:
    """Observed orders log2(e_i / e_{i+1}) for a factor-2 refinement chain."""
    e = [float(v) for v in errors]
    if len(e) < 2:
        raise ValueError("need at least two errors")
    return [math.log2(e[i] / e[i + 1]) for i in range(len(e) - 1)]
