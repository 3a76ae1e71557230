"""Decay-constant extraction from time series."""

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["GaussianFit", "fit_gaussian_tau", "crossing_time", "revival"]


@dataclass(frozen=True)
class GaussianFit:
    tau: float
    residual: float
    n_points: int
    window: tuple


def fit_gaussian_tau(series, column="F_e_numeric", window=(0.2, 0.9), min_points=5):
    """Fit ``F(t) = exp(-t^2 / tau^2)`` on the points with ``F`` inside ``window``.

    Least squares of ``-ln F`` against ``t^2`` through the origin; the
    residual is the RMS misfit of ``-ln F``.
    """
    t, f = series.times, series[column]
    lo, hi = window
    sel = (f >= lo) & (f <= hi)
    if sel.sum() < min_points:
        raise ValueError(
            f"only {int(sel.sum())} points of {column!r} in window {window}; need {min_points}"
        )
    x, y = t[sel] ** 2, -np.log(f[sel])
    slope = float(x @ y / (x @ x))
    resid = math.sqrt(float(np.mean((y - slope * x) ** 2)))
    return GaussianFit(1.0 / math.sqrt(slope), resid, int(sel.sum()), tuple(window))


def crossing_time(times, values, level=0.5):
    """First time ``values`` falls below ``level`` (linear interpolation), or None."""
    values = np.asarray(values)
    below = np.nonzero(values < level)[0]
    if below.size == 0:
        return None
    k = int(below[0])
    if k == 0:
        return float(times[0])
    t0, t1, v0, v1 = times[k - 1], times[k], values[k - 1], values[k]
    return float(t0 + (v0 - level) * (t1 - t0) / (v0 - v1))


def revival(times, values, window):
    """``(max value, time of max, mean value)`` inside ``window = (t0, t1)``."""
    sel = (times >= window[0]) & (times <= window[1])
    if not sel.any():
        return None
    v, t = values[sel], times[sel]
    k = int(np.argmax(v))
    return float(v[k]), float(t[k]), float(v.mean())
