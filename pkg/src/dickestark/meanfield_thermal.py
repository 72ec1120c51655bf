"""Finite-temperature mean-field theory: free energy, critical coupling
and temperature, order parameter, and free-energy landscapes.

Everything is written in the intensive photon amplitude (the condensate
amplitude per square root of the atom count), so no observable here
depends on N.  The free energy per atom for a complex amplitude
a = x + i y is

    f(a) = (omega + 4 kappa g^2/delta) |a|^2 - ln(2 cosh(beta E)) / beta
    E    = sqrt(|g a + g tau a*|^2 + (delta/2 + u |a|^2 / 2)^2)

which on the real axis reduces to the single-atom level splitting
E = sqrt(4 a^2 g'^2 + (delta + u a^2)^2) / 2 with g' = g (1 + tau).
The normal state destabilizes at

    g_c(T) = sqrt([delta omega - (delta u / 2) t] / [(tau+1)^2 t - 4 kappa]),
    t = tanh(beta delta / 2),

valid only when both bracketed quantities are positive; both negative at
once marks the unstable regime where the landscape has no symmetry-broken
minimum at all.  Inverting g_c(T) = g gives the critical temperature

    T_c = delta / (2 artanh[(2 delta omega + 8 g^2 kappa) /
                            (2 g^2 (tau+1)^2 + delta u)])

with artanh computed as (1/2) ln((1+z)/(1-z)) under an explicit domain
guard; the argument reaches 1 exactly at the zero-temperature critical
coupling, where T_c -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import RootNotBracketed
from .model import ModelParams

NORMAL = "normal"
SUPERRADIANT = "superradiant"
UNSTABLE = "unstable"

OK = "ok"
NO_TRANSITION = "no_transition"


@dataclass(frozen=True)
class ThermalPoint:
    """Model parameters at a strictly positive temperature (k_B = 1).
    Zero temperature is the business of the ground-state mean field."""

    params: ModelParams
    temperature: float

    def __post_init__(self):
        if self.temperature <= 0:
            raise ValueError(
                f"temperature must be positive, got {self.temperature}; "
                "use the zero-temperature mean field at T = 0"
            )

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature


@dataclass(frozen=True)
class ThermalCritical:
    """Critical-coupling evaluation with validity bookkeeping.

    ``value`` is set only when both validity conditions hold;
    ``formula_value`` carries the raw square root whenever the ratio is
    positive (including the doubly-violated unstable regime).
    """

    value: float | None
    formula_value: float | None
    numerator: float
    denominator: float
    status: str  # ok | no_transition | unstable
    reason: str | None


@dataclass(frozen=True)
class CriticalTemperature:
    value: float | None
    artanh_argument: float
    reason: str | None


@dataclass(frozen=True)
class ThermalSolution:
    alpha_intensive: float  # nan in the unstable regime
    free_energy_per_atom: float
    phase: str
    g_c: float | None
    t_c: float | None


def free_energy(point: ThermalPoint, alpha):
    """Free energy per atom at complex intensive amplitude(s) ``alpha``."""
    p = point.params
    beta = point.beta
    a = np.asarray(alpha, dtype=complex)
    x, y = a.real, a.imag
    mod2 = x * x + y * y
    drive2 = p.g**2 * ((1.0 + p.tau) ** 2 * x * x + (1.0 - p.tau) ** 2 * y * y)
    level = np.sqrt(drive2 + (p.delta / 2.0 + p.u * mod2 / 2.0) ** 2)
    quad = (p.omega + 4.0 * p.kappa * p.g**2 / p.delta) * mod2
    # ln(2 cosh(beta E)) evaluated overflow-safe
    f = quad - np.logaddexp(beta * level, -beta * level) / beta
    return f if f.ndim else float(f)


def critical_coupling_thermal(point: ThermalPoint) -> ThermalCritical:
    p = point.params
    t = np.tanh(point.beta * p.delta / 2.0)
    num = p.delta * p.omega - (p.delta * p.u / 2.0) * t
    den = (p.tau + 1.0) ** 2 * t - 4.0 * p.kappa
    formula = float(np.sqrt(num / den)) if den != 0.0 and num / den > 0 else None
    if num > 0 and den > 0:
        return ThermalCritical(formula, formula, num, den, OK, None)
    reasons = []
    if num <= 0:
        reasons.append("numerator delta*(omega - u tanh(beta delta/2)/2) <= 0")
    if den <= 0:
        reasons.append("denominator (tau+1)^2 tanh(beta delta/2) - 4 kappa <= 0")
    status = UNSTABLE if (num < 0 and den < 0) else NO_TRANSITION
    return ThermalCritical(None, formula, num, den, status, "; ".join(reasons))


def critical_temperature(params: ModelParams) -> CriticalTemperature:
    """Temperature where the normal state destabilizes at fixed coupling."""
    num = 2.0 * params.delta * params.omega + 8.0 * params.g**2 * params.kappa
    den = 2.0 * params.g**2 * (params.tau + 1.0) ** 2 + params.delta * params.u
    if den <= 0:
        return CriticalTemperature(
            None, np.inf, "2 g^2 (tau+1)^2 + delta u <= 0: artanh argument undefined"
        )
    z = num / den
    if z >= 1.0 + 1e-12:
        return CriticalTemperature(
            None, z, "coupling at or below the zero-temperature critical point"
        )
    if z >= 1.0 - 1e-12:
        # quantum critical point: the transition line terminates at T = 0
        return CriticalTemperature(0.0, z, None)
    t_c = params.delta / np.log((1.0 + z) / (1.0 - z))
    return CriticalTemperature(float(t_c), z, None)


def stationarity_residual(point: ThermalPoint, alpha):
    """Residual of the real-axis stationarity condition; zero at extrema
    of the free energy away from the origin."""
    p = point.params
    a = np.asarray(alpha, dtype=float)
    gp2 = p.g_prime**2
    shifted = p.delta + p.u * a * a
    level = np.sqrt(4.0 * a * a * gp2 + shifted * shifted) / 2.0
    lhs = 2.0 * p.omega + 8.0 * p.g**2 * p.kappa / p.delta
    rhs = (2.0 * gp2 + p.u * shifted) * np.tanh(point.beta * level) / (2.0 * level)
    out = lhs - rhs
    return out if out.ndim else float(out)


def _broken_minima(point: ThermalPoint, alpha_max: float) -> list[tuple[float, float]]:
    """(alpha, f) for every real-axis free-energy minimum below f(0)."""
    f0 = free_energy(point, 0.0)
    grid = np.geomspace(1e-8, alpha_max, 512)
    vals = stationarity_residual(point, grid)
    sign_flip = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    minima = []
    for i in sign_flip:
        root = brentq(
            lambda a: stationarity_residual(point, a),
            grid[i],
            grid[i + 1],
            xtol=1e-15,
            rtol=8.9e-16,
        )
        h = 1e-5 * max(1.0, root)
        f_m, f_c, f_p = (
            free_energy(point, root - h),
            free_energy(point, root),
            free_energy(point, root + h),
        )
        if f_c < f0 and (f_m - 2.0 * f_c + f_p) > 0:
            minima.append((float(root), float(f_c)))
    return minima


def order_parameter_thermal(
    point: ThermalPoint, alpha_max: float = 10.0
) -> ThermalSolution:
    """Solve the stationarity condition for the thermal order parameter.

    Returns the lowest-free-energy broken minimum when one exists, the
    normal state when the origin is the global minimum, and the unstable
    label when the landscape has no symmetry-broken minimum although the
    origin is not globally stable.
    """
    crit = critical_coupling_thermal(point)
    t_c = critical_temperature(point.params).value
    f0 = float(free_energy(point, 0.0))
    # curvature of f at the origin carries the sign of num - g^2 den
    curvature = crit.numerator - point.params.g**2 * crit.denominator

    minima = _broken_minima(point, alpha_max)
    if minima:
        alpha, f_min = min(minima, key=lambda t: t[1])
        return ThermalSolution(alpha, f_min, SUPERRADIANT, crit.value, t_c)

    if crit.status == UNSTABLE:
        return ThermalSolution(float("nan"), f0, UNSTABLE, None, t_c)
    if curvature < -1e-13 * max(1.0, abs(crit.numerator)):
        if crit.status == OK:
            raise RootNotBracketed(
                f"origin unstable (g = {point.params.g} > g_c = {crit.value}) "
                f"but no broken minimum found below alpha = {alpha_max}"
            )
        # origin unstable and nothing catches the runaway landscape
        return ThermalSolution(float("nan"), f0, UNSTABLE, None, t_c)
    return ThermalSolution(0.0, f0, NORMAL, crit.value, t_c)


@dataclass
class LandscapeResult:
    """Free-energy surface over complex amplitude, referenced to f(0)."""

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray  # shape (len(x), len(y)), f(x + i y) - f(0)
    minima: list[tuple[float, float, float]]  # (x, y, relative f)
    maxima: list[tuple[float, float, float]]


def landscape_grid(
    point: ThermalPoint,
    x_range: tuple[float, float] = (-1.0, 1.0),
    y_range: tuple[float, float] = (-1.0, 1.0),
    resolution: int = 65,
) -> LandscapeResult:
    """Evaluate the free energy over a complex-amplitude grid and classify
    interior critical points by 8-neighbor comparison.

    An odd resolution puts the origin exactly on the grid whenever the
    ranges are symmetric, which keeps its minimum detectable.
    """
    if resolution < 32:
        raise ValueError(f"resolution must be >= 32 per axis, got {resolution}")
    xs = np.linspace(x_range[0], x_range[1], resolution)
    ys = np.linspace(y_range[0], y_range[1], resolution)
    grid_x, grid_y = np.meshgrid(xs, ys, indexing="ij")
    values = free_energy(point, grid_x + 1j * grid_y)
    values = values - float(free_energy(point, 0.0))

    inner = values[1:-1, 1:-1]
    lower = np.ones_like(inner, dtype=bool)
    higher = np.ones_like(inner, dtype=bool)
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            neighbor = values[1 + dx : resolution - 1 + dx, 1 + dy : resolution - 1 + dy]
            lower &= inner < neighbor
            higher &= inner > neighbor
    minima = [
        (float(xs[i + 1]), float(ys[j + 1]), float(inner[i, j]))
        for i, j in zip(*np.nonzero(lower))
    ]
    maxima = [
        (float(xs[i + 1]), float(ys[j + 1]), float(inner[i, j]))
        for i, j in zip(*np.nonzero(higher))
    ]
    return LandscapeResult(xs, ys, values, minima, maxima)
