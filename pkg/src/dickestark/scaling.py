"""Finite-size scaling analysis: power-law fits and data-collapse scoring.

Observables near the transition follow

    Q = |1 - g/g_c|^beta_Q  F(|1 - g/g_c| N^(1/nu))

so curves of different N collapse onto the scaling function F after the
rescaling x = |1 - g/g_c| N^(1/nu), y = Q |1 - g/g_c|^(-beta_Q), and at
the critical point Q scales as N^(-beta_Q/nu).  The correlation-length
exponent used throughout is nu = 3/2 (scaling variable N^(2/3)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import linregress

from .errors import InsufficientPoints, NonPositiveObservable, WindowEmpty

#: reduced-variable fitting window: closer is finite-size rounded,
#: farther is out of the critical regime
DEFAULT_WINDOW = (1e-2, 1e-1)

#: correlation-length exponent of this universality class
NU = 1.5

OBSERVABLE_TAGS = ("epsilon", "nph_density", "delta_x", "alpha_mf")


@dataclass(frozen=True)
class ScalingCurve:
    """One observable versus one control parameter at fixed system size."""

    control: np.ndarray
    values: np.ndarray
    size: int
    observable_tag: str

    def __post_init__(self):
        control = np.asarray(self.control, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "control", control)
        object.__setattr__(self, "values", values)
        if control.shape != values.shape or control.ndim != 1:
            raise ValueError("control and values must be 1-d arrays of equal length")
        if np.any(np.diff(control) <= 0):
            raise ValueError("control values must be strictly increasing")
        if self.observable_tag not in OBSERVABLE_TAGS:
            raise ValueError(
                f"unknown observable tag {self.observable_tag!r}; "
                f"expected one of {OBSERVABLE_TAGS}"
            )


@dataclass(frozen=True)
class ExponentFit:
    exponent: float
    stderr: float
    window: tuple[float, float]
    r_squared: float
    n_points: int


def fit_powerlaw(
    curve: ScalingCurve,
    critical_value: float,
    window: tuple[float, float] = DEFAULT_WINDOW,
) -> ExponentFit:
    """Least-squares slope of log Q versus log|control - critical| over the
    reduced-variable window."""
    if critical_value == 0:
        raise ValueError("critical_value must be nonzero")
    reduced = np.abs(curve.control / critical_value - 1.0)
    mask = (reduced >= window[0]) & (reduced <= window[1])
    if np.count_nonzero(mask) < 5:
        raise InsufficientPoints(
            f"{np.count_nonzero(mask)} points inside window {window}, need >= 5"
        )
    q = curve.values[mask]
    if np.any(q <= 0):
        raise NonPositiveObservable("log-log fit needs strictly positive values")
    x = np.log(np.abs(curve.control[mask] - critical_value))
    fit = linregress(x, np.log(q))
    return ExponentFit(
        exponent=float(fit.slope),
        stderr=float(fit.stderr),
        window=tuple(window),
        r_squared=float(fit.rvalue**2),
        n_points=int(np.count_nonzero(mask)),
    )


def fit_criticality_n_scaling(values_at_gc) -> ExponentFit:
    """Slope of log Q versus log N from (N, Q) pairs taken at the critical
    coupling."""
    pairs = sorted((float(n), float(q)) for n, q in values_at_gc)
    if len(pairs) < 3:
        raise InsufficientPoints(f"{len(pairs)} sizes, need >= 3")
    sizes = np.array([p[0] for p in pairs])
    values = np.array([p[1] for p in pairs])
    if np.any(values <= 0):
        raise NonPositiveObservable("log-log fit needs strictly positive values")
    fit = linregress(np.log(sizes), np.log(values))
    return ExponentFit(
        exponent=float(fit.slope),
        stderr=float(fit.stderr),
        window=(float(sizes[0]), float(sizes[-1])),
        r_squared=float(fit.rvalue**2),
        n_points=len(pairs),
    )


def collapse_quality(
    curves,
    g_c: float,
    beta_q: float,
    nu: float = NU,
    window: tuple[float, float] = DEFAULT_WINDOW,
) -> float:
    """Mean squared deviation between each rescaled curve and the
    piecewise-linear interpolant of the pooled others (lower = better).

    Curves are processed in size order, so the score is independent of
    the input ordering.
    """
    curves = sorted(curves, key=lambda c: (c.size, c.control[0]))
    if len(curves) < 2 or len({c.size for c in curves}) < 2:
        raise ValueError("need at least two curves of distinct size")

    rescaled = []
    for curve in curves:
        reduced = np.abs(curve.control / g_c - 1.0)
        mask = (reduced >= window[0]) & (reduced <= window[1])
        if not np.any(mask):
            raise WindowEmpty(
                f"curve at N = {curve.size} has no points in window {window}"
            )
        x = reduced[mask] * curve.size ** (1.0 / nu)
        y = curve.values[mask] * reduced[mask] ** (-beta_q)
        order = np.argsort(x)
        rescaled.append((x[order], y[order]))

    total, count = 0.0, 0
    for i, (x_i, y_i) in enumerate(rescaled):
        pool_x = np.concatenate([rescaled[j][0] for j in range(len(rescaled)) if j != i])
        pool_y = np.concatenate([rescaled[j][1] for j in range(len(rescaled)) if j != i])
        order = np.argsort(pool_x, kind="stable")
        pool_x, pool_y = pool_x[order], pool_y[order]
        inside = (x_i >= pool_x[0]) & (x_i <= pool_x[-1])
        if not np.any(inside):
            continue
        interp = np.interp(x_i[inside], pool_x, pool_y)
        total += float(np.sum((y_i[inside] - interp) ** 2))
        count += int(np.count_nonzero(inside))
    if count == 0:
        raise WindowEmpty("rescaled curves share no overlapping support")
    return total / count
