"""Zero-temperature mean-field theory of the superradiant transition.

The variational ground-state energy per atom over the photon amplitude
``alpha`` and the atomic displacement ``varsigma`` (both intensive):

    e(alpha, varsigma) = (omega - u/2) alpha^2 + u alpha^2 varsigma^2
                         + delta (varsigma^2 - 1/2)
                         - 2 g (1 + tau) alpha varsigma sqrt(1 - varsigma^2)
                         + 4 kappa (g^2/delta) alpha^2

The sign of the coupling term is a gauge choice; this one puts the
symmetry-broken minima in the non-negative quadrant, so both order
parameters are reported >= 0.  Setting the gradient to zero reduces to a
quadratic in s = varsigma^2,

    u (g'^2 + u delta) s^2 + 2 A (g'^2 + u delta) s + A (delta A - g'^2) = 0,
    A = omega - u/2 + 4 kappa g^2 / delta,   g' = g (1 + tau),

whose physical root reproduces the closed-form order parameters; the
instability of the normal state at

    g_c0 = sqrt(delta omega - delta u / 2) / sqrt((tau+1)^2 - 4 kappa)

requires both radicands positive.  A derivative-free grid minimizer of
the same energy surface serves as an independent cross-check and as the
fallback when the closed form misbehaves.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ClosedFormBranchError, UnphysicalVarsigma
from .model import ModelParams

NORMAL = "normal"
SUPERRADIANT = "superradiant"


@dataclass(frozen=True)
class ZeroTValidity:
    """Signs of the critical-coupling radicands plus regime flags."""

    numerator: float
    denominator: float
    numerator_positive: bool
    denominator_positive: bool
    u_below_two_omega: bool
    beyond_rabi_stark: bool  # u <= -2 omega: single-atom analogue sits in a continuum


@dataclass(frozen=True)
class CriticalCouplingZero:
    value: float | None
    validity: ZeroTValidity
    reason: str | None

    @property
    def exists(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class MeanFieldSolutionZero:
    alpha: float
    varsigma: float
    energy_per_atom: float
    phase: str
    validity: ZeroTValidity
    closed_form_ok: bool
    g_c0: float | None


def _validity(params: ModelParams) -> ZeroTValidity:
    num = params.delta * params.omega - params.delta * params.u / 2.0
    den = (params.tau + 1.0) ** 2 - 4.0 * params.kappa
    return ZeroTValidity(
        numerator=num,
        denominator=den,
        numerator_positive=num > 0,
        denominator_positive=den > 0,
        u_below_two_omega=params.u < 2.0 * params.omega,
        beyond_rabi_stark=params.u <= -2.0 * params.omega,
    )


def critical_coupling_zero(params: ModelParams) -> CriticalCouplingZero:
    """Coupling where the normal state loses stability, if it exists."""
    validity = _validity(params)
    if validity.numerator_positive and validity.denominator_positive:
        value = float(np.sqrt(validity.numerator) / np.sqrt(validity.denominator))
        return CriticalCouplingZero(value, validity, None)
    reasons = []
    if not validity.numerator_positive:
        reasons.append(
            "numerator delta*(omega - u/2) <= 0: Stark coupling at or above 2 omega"
        )
    if not validity.denominator_positive:
        reasons.append(
            "denominator (tau+1)^2 - 4 kappa <= 0: anisotropy too weak for the "
            "A-square coefficient"
        )
    return CriticalCouplingZero(None, validity, "; ".join(reasons))


def energy_per_atom(alpha, varsigma, params: ModelParams):
    """Variational energy per atom.  Accepts scalars or broadcastable arrays."""
    a = np.asarray(alpha, dtype=float)
    v = np.asarray(varsigma, dtype=float)
    s = v * v
    if np.any(s > 1.0 + 1e-12):
        raise UnphysicalVarsigma(f"varsigma^2 = {np.max(s)} exceeds 1")
    s = np.minimum(s, 1.0)
    a2 = a * a
    e = (
        (params.omega - params.u / 2.0) * a2
        + params.u * a2 * s
        + params.delta * (s - 0.5)
        - 2.0 * params.g * (1.0 + params.tau) * a * v * np.sqrt(1.0 - s)
        + 4.0 * params.kappa * params.g**2 / params.delta * a2
    )
    return e if e.ndim else float(e)


def _alpha_from_varsigma(params: ModelParams, s: float) -> float | None:
    """Photon amplitude at a stationary point with varsigma^2 = s; None when
    the point is not a minimum along the alpha direction."""
    a_coef = params.omega - params.u / 2.0 + 4.0 * params.kappa * params.g**2 / params.delta
    denom = 2.0 * params.delta * (a_coef + params.u * s)
    if denom <= 0.0:
        return None
    return 2.0 * np.sqrt(s) * np.sqrt(1.0 - s) * params.delta * params.g_prime / denom


def _closed_form_candidates(params: ModelParams) -> list[tuple[float, float]]:
    """Stationary points with varsigma != 0 from the closed-form quadratic."""
    gp = params.g_prime
    if gp == 0.0:
        return []
    a_coef = params.omega - params.u / 2.0 + 4.0 * params.kappa * params.g**2 / params.delta
    da = params.delta * a_coef
    gp2 = gp * gp
    du = params.delta * params.u

    if abs(params.u) < 1e-8 * params.omega:
        # Stark-free limit of the quadratic (its leading coefficient vanishes)
        roots = [0.5 - da / (2.0 * gp2)]
    else:
        c2 = params.u * (gp2 + du)
        c1 = 2.0 * a_coef * (gp2 + du)
        c0 = a_coef * (da - gp2)
        if c2 == 0.0:
            roots = [] if c1 == 0.0 else [-c0 / c1]
        else:
            rts = np.roots([c2, c1, c0])
            roots = [float(r.real) for r in rts if abs(r.imag) < 1e-12]

    out = []
    for s in roots:
        if not 1e-14 < s <= 1.0:
            continue
        alpha = _alpha_from_varsigma(params, s)
        if alpha is None or not np.isfinite(alpha):
            continue
        out.append((float(alpha), float(np.sqrt(s))))
    return out


def minimize_energy_grid(
    params: ModelParams,
    alpha_max: float = 3.0,
    coarse: int = 101,
    resolution: float = 1e-10,
) -> tuple[float, float, float]:
    """Brute-force minimum of the energy surface over
    [0, alpha_max] x [0, 1]: coarse grid, then windowed refinement down to
    ``resolution`` in both order parameters.  Independent of the closed forms."""
    a_lo, a_hi = 0.0, float(alpha_max)
    v_lo, v_hi = 0.0, 1.0
    n = coarse
    best = None
    # the shrinking window keeps +-3.5 grid spacings around the incumbent:
    # in a narrow diagonal valley the discrete argmin can sit a few
    # spacings away from the true minimum
    pad = 3.5
    while True:
        alphas = np.linspace(a_lo, a_hi, n)
        sigmas = np.linspace(v_lo, v_hi, n)
        grid_a, grid_v = np.meshgrid(alphas, sigmas, indexing="ij")
        energy = energy_per_atom(grid_a, grid_v, params)
        i, j = np.unravel_index(int(np.argmin(energy)), energy.shape)
        best = (float(alphas[i]), float(sigmas[j]), float(energy[i, j]))
        da = alphas[1] - alphas[0]
        dv = sigmas[1] - sigmas[0]
        if max(da, dv) <= resolution:
            return best
        a_lo = max(0.0, best[0] - pad * da)
        a_hi = min(float(alpha_max), best[0] + pad * da)
        v_lo = max(0.0, best[1] - pad * dv)
        v_hi = min(1.0, best[1] + pad * dv)
        n = 21


def order_parameters(params: ModelParams, strict: bool = False) -> MeanFieldSolutionZero:
    """Ground-state order parameters from the closed forms.

    Below the critical coupling (or when none exists) the normal state is
    returned.  Above it, the physical root of the stationarity quadratic
    is selected by energy.  If the closed form yields no physical root
    there, the grid minimizer adjudicates: with ``strict`` a
    ClosedFormBranchError is raised, otherwise the minimizer's solution is
    returned with ``closed_form_ok = False``.
    """
    crit = critical_coupling_zero(params)
    validity = crit.validity
    e_normal = energy_per_atom(0.0, 0.0, params)

    def normal(ok: bool = True) -> MeanFieldSolutionZero:
        return MeanFieldSolutionZero(
            0.0, 0.0, e_normal, NORMAL, validity, ok, crit.value
        )

    if not crit.exists or params.g <= crit.value:
        return normal()

    scale = max(1.0, abs(e_normal))
    candidates = []
    for alpha, varsigma in _closed_form_candidates(params):
        e = energy_per_atom(alpha, varsigma, params)
        if e < e_normal - 1e-13 * scale:
            candidates.append((e, alpha, varsigma))

    if candidates:
        e, alpha, varsigma = min(candidates)
        return MeanFieldSolutionZero(
            alpha, varsigma, e, SUPERRADIANT, validity, True, crit.value
        )

    # closed form found nothing although the normal state is unstable
    a_min, v_min, e_min = minimize_energy_grid(params)
    if e_min < e_normal - 1e-9 * scale:
        if strict:
            raise ClosedFormBranchError(
                "closed-form order parameters have no physical root but the "
                "grid minimizer finds a symmetry-broken minimum",
                closed_form=None,
                minimizer=(a_min, v_min, e_min),
            )
        warnings.warn(
            "closed-form order parameters unavailable; falling back to the "
            "grid minimizer",
            stacklevel=2,
        )
        return MeanFieldSolutionZero(
            a_min, v_min, e_min, SUPERRADIANT, validity, False, crit.value
        )
    return normal()
