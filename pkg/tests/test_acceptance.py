"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Heavy exact-diagonalization datasets are built once per session and shared
between criteria.  Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import numpy as np
import pytest

from dickestark import ModelParams
from dickestark.errors import CutoffRunaway
from dickestark.meanfield_thermal import (
    OK,
    UNSTABLE,
    ThermalPoint,
    critical_coupling_thermal,
    critical_temperature,
    landscape_grid,
    order_parameter_thermal,
)
from dickestark.meanfield_zero import (
    NORMAL,
    SUPERRADIANT,
    critical_coupling_zero,
    minimize_energy_grid,
    order_parameters,
)
from dickestark.model import EVEN, FULL, ODD, BasisSpec, build_hamiltonian
from dickestark.scaling import (
    ScalingCurve,
    collapse_quality,
    fit_criticality_n_scaling,
    fit_powerlaw,
)
from dickestark.spectra import converge_cutoff, lowest_eigenpairs, observables
from dickestark.sweep import Axis, EdSettings, SweepSpec, extract_boundary, run_sweep

from oracles import sample_transition_params

SCALING_SET = ModelParams(omega=1.0, delta=0.5, u=0.5, tau=2.5, kappa=1.2, n_atoms=32)
GAMMA_SIZES = (32, 64, 128, 256)


def report(num: int, label: str, ok: bool, detail: str = ""):
    print(f"\nACCEPTANCE {num:02d} [{label}]: {'PASS' if ok else 'FAIL'} {detail}")


def solve_observables(params, tail=1e-9, energy=1e-9, start=16):
    res = converge_cutoff(
        params, k=2, tail_tol=tail, energy_tol=energy, n_max_start=start
    )
    return observables(res, params)


# ---------------------------------------------------------------- criterion 1
def test_criterion_01_thermal_critical_coupling_values():
    upper = ModelParams(omega=1.0, delta=0.5, kappa=1.0, tau=2.5, u=0.5, g=0.1)
    crit = critical_coupling_thermal(ThermalPoint(upper, 0.5))
    ok1 = crit.status == OK and abs(crit.value - 0.5160) <= 1e-4

    with pytest.warns(Warning):
        lower = ModelParams(omega=1.0, delta=0.5, kappa=1.0, tau=1.0, u=5.5, g=0.1)
    crit2 = critical_coupling_thermal(ThermalPoint(lower, 0.5))
    ok2 = (
        crit2.status == UNSTABLE
        and crit2.value is None
        and abs(crit2.formula_value - 0.2509) <= 1e-4
    )
    ok = ok1 and ok2
    report(
        1,
        "thermal critical coupling",
        ok,
        f"anisotropic {crit.value:.6f} (want 0.5160 +- 1e-4); "
        f"isotropic formula {crit2.formula_value:.6f} status {crit2.status}",
    )
    assert ok


# ---------------------------------------------------------------- criterion 2
def test_criterion_02_zero_temperature_limit_consistency():
    rng = np.random.default_rng(42)
    worst = 0.0
    checked = 0
    while checked < 100:
        delta = float(rng.uniform(0.2, 2.5))
        u = float(rng.uniform(-1.5, 1.9))
        kappa = float(rng.uniform(0.0, 2.5))
        tau_min = max(0.0, 2.0 * np.sqrt(kappa) - 1.0)
        tau = float(rng.uniform(tau_min + 0.1, tau_min + 4.0))
        params = ModelParams(omega=1.0, delta=delta, u=u, tau=tau, kappa=kappa, g=0.1)
        zero_t = critical_coupling_zero(params)
        if not zero_t.exists:
            continue
        thermal = critical_coupling_thermal(ThermalPoint(params, 1e-6))
        assert thermal.status == OK
        worst = max(worst, abs(thermal.value - zero_t.value) / zero_t.value)
        checked += 1
    ok = worst < 1e-6
    report(2, "beta = 1e6 limit", ok, f"worst relative deviation {worst:.2e} over 100 samples")
    assert ok


# ---------------------------------------------------------------- criterion 3
def test_criterion_03_no_go_recovery_and_isotropic_limit():
    failures = []
    for kappa in (1.0, 1.5, 2.5):
        params = ModelParams(omega=1.0, delta=0.7, g=0.5, tau=1.0, u=0.0, kappa=kappa)
        if critical_coupling_zero(params).exists:
            failures.append(f"zero-T transition at kappa={kappa}")
        if order_parameters(params).phase != NORMAL:
            failures.append(f"broken ground state at kappa={kappa}")
        for temp in (0.01, 0.1, 0.5, 2.0, 10.0):
            crit = critical_coupling_thermal(ThermalPoint(params, temp))
            if crit.value is not None:
                failures.append(f"thermal transition at kappa={kappa}, T={temp}")
    worst = 0.0
    for delta in (0.3, 1.0, 1.7):
        params = ModelParams(omega=1.0, delta=delta, tau=1.0, u=0.0, kappa=0.0)
        crit = critical_coupling_zero(params)
        worst = max(worst, abs(crit.value - np.sqrt(delta) / 2.0))
    if worst > 1e-12:
        failures.append(f"isotropic limit off by {worst:.2e}")
    ok = not failures
    report(3, "no-go recovery", ok, "; ".join(failures) or f"isotropic limit dev {worst:.1e}")
    assert ok, failures


# ---------------------------------------------------------------- criterion 4
def test_criterion_04_mean_field_oracle_equivalence():
    rng = np.random.default_rng(2024)
    worst_e, worst_op = 0.0, 0.0
    for _ in range(50):
        params = sample_transition_params(rng)
        sol = order_parameters(params)
        a, v, e = minimize_energy_grid(params)
        worst_e = max(worst_e, abs(sol.energy_per_atom - e))
        worst_op = max(worst_op, abs(sol.alpha - a), abs(sol.varsigma - v))
    ok = worst_e < 1e-6 and worst_op < 1e-4
    report(
        4,
        "mean-field oracle equivalence",
        ok,
        f"worst energy dev {worst_e:.2e} (tol 1e-6), order-parameter dev {worst_op:.2e} (tol 1e-4)",
    )
    assert ok


# ---------------------------------------------------------------- criterion 5
def test_criterion_05_phase_boundary_tracks_analytic_line():
    base = ModelParams(omega=1.0, delta=2.0, tau=2.5, kappa=1.2, n_atoms=200)
    ed = EdSettings(k=2, tol=1e-9, n_max_start=16, tail_tol=1e-7, energy_tol=1e-7)
    deviations = {}
    for u in np.linspace(0.0, 1.8, 11):
        params = base.replace(u=float(u))
        gc0 = critical_coupling_zero(params).value
        spec = SweepSpec(
            base=params,
            axis1=Axis("g", tuple(gc0 * np.linspace(0.94, 1.12, 10))),
            observables=("nph_density",),
            ed=ed,
            workers=2,
        )
        result = run_sweep(spec)
        assert result.error_count == 0
        [(_, crossing)] = extract_boundary(result)
        assert crossing is not None, f"no boundary crossing found at u={u}"
        deviations[float(u)] = abs(crossing - gc0) / gc0
    worst = max(deviations.values())
    ok = worst <= 0.05
    report(
        5,
        "phase boundary vs analytic line",
        ok,
        f"worst relative deviation {worst:.3f} (tol 0.05) over 11 Stark couplings",
    )
    assert ok, deviations


# ------------------------------------------------------- criteria 6+7 dataset
@pytest.fixture(scope="session")
def scaling_dataset():
    """Observables at and around the critical coupling for the scaling sizes,
    plus larger single-size curves for the off-critical exponent fits."""
    gc0 = critical_coupling_zero(SCALING_SET).value
    at_crit = {}
    for n in GAMMA_SIZES:
        at_crit[n] = solve_observables(SCALING_SET.replace(n_atoms=n, g=gc0))

    reduced = np.geomspace(1.05e-2, 9.7e-2, 12)
    curves = {"epsilon": [], "nph_density": [], "delta_x": []}
    for n in GAMMA_SIZES:
        normal, superradiant = [], []
        for r in reduced:
            normal.append(
                (gc0 * (1 - r), solve_observables(SCALING_SET.replace(n_atoms=n, g=gc0 * (1 - r))))
            )
            superradiant.append(
                (gc0 * (1 + r), solve_observables(SCALING_SET.replace(n_atoms=n, g=gc0 * (1 + r))))
            )
        normal.sort()
        superradiant.sort()
        for attr, side in (
            ("epsilon", normal),
            ("delta_x", normal),
            ("nph_density", superradiant),
        ):
            curves[attr].append(
                ScalingCurve(
                    np.array([g for g, _ in side]),
                    np.array([getattr(o, attr) for _, o in side]),
                    n,
                    attr,
                )
            )

    # off-critical fits need the scaling argument r * N^(2/3) >= 3 across the
    # window while r <= 0.15 stays inside the critical regime; system sizes
    # are chosen per observable so that window is affordable
    off_crit = {}
    for attr, n, sign in (
        ("epsilon", 512, -1),
        ("nph_density", 1024, +1),
        ("delta_x", 2048, -1),
    ):
        lo, hi = 3.0 * n ** (-2.0 / 3.0), 0.15
        pts = []
        for r in np.geomspace(lo * 1.02, hi * 0.98, 10):
            params = SCALING_SET.replace(n_atoms=n, g=gc0 * (1 + sign * r))
            pts.append((params.g, getattr(solve_observables(params, start=24), attr)))
        pts.sort()
        curve = ScalingCurve(
            np.array([g for g, _ in pts]), np.array([q for _, q in pts]), n, attr
        )
        off_crit[attr] = fit_powerlaw(curve, gc0, (lo, hi))
    return {"gc0": gc0, "at_crit": at_crit, "curves": curves, "off_crit": off_crit}


# ---------------------------------------------------------------- criterion 6
def test_criterion_06_scaling_exponents_at_desk_scale(scaling_dataset):
    at_crit = scaling_dataset["at_crit"]
    failures = []
    details = []

    gamma_bands = {
        "epsilon": (-1.0 / 3.0, 0.05),
        "nph_density": (-2.0 / 3.0, 0.07),
        "delta_x": (1.0 / 6.0, 0.05),
    }
    for attr, (target, tol) in gamma_bands.items():
        fit = fit_criticality_n_scaling(
            [(n, getattr(o, attr)) for n, o in at_crit.items()]
        )
        details.append(f"gamma[{attr}]={fit.exponent:+.4f} (want {target:+.3f}+-{tol})")
        if abs(fit.exponent - target) > tol:
            failures.append(details[-1])

    beta_bands = {
        "epsilon": (0.5, 0.1),
        "nph_density": (1.0, 0.15),
        "delta_x": (-0.25, 0.08),
    }
    for attr, (target, tol) in beta_bands.items():
        fit = scaling_dataset["off_crit"][attr]
        details.append(f"beta[{attr}]={fit.exponent:+.4f} (want {target:+.2f}+-{tol})")
        if abs(fit.exponent - target) > tol:
            failures.append(details[-1])

    ok = not failures
    report(6, "finite-size scaling exponents", ok, "; ".join(details))
    assert ok, (
        "quadrature-width checks miss their bands at these system sizes; "
        "the O(1) vacuum part of <x^2> biases its slopes low and fades only "
        "slowly with N: " + "; ".join(failures)
    )


# ---------------------------------------------------------------- criterion 7
def test_criterion_07_scaling_collapse_discrimination(scaling_dataset):
    gc0 = scaling_dataset["gc0"]
    betas = {"epsilon": 0.5, "nph_density": 1.0, "delta_x": -0.25}
    failures = []
    details = []
    for attr, beta in betas.items():
        curves = scaling_dataset["curves"][attr]
        base = collapse_quality(curves, gc0, beta, 1.5)
        worse_beta = collapse_quality(curves, gc0, 1.3 * beta, 1.5)
        worse_nu = collapse_quality(curves, gc0, beta, 1.0 / (1.3 / 1.5))
        ratio = min(worse_beta, worse_nu) / base
        details.append(f"{attr}: x{ratio:.1f}")
        if ratio < 5.0:
            failures.append(f"{attr} discrimination x{ratio:.1f} < x5")
    ok = not failures
    report(7, "scaling collapse", ok, "; ".join(details))
    assert ok, (
        "collapse with the universality-class exponents must beat 30%-perturbed "
        "exponents by >= 5x: " + "; ".join(failures)
    )


# ---------------------------------------------------------------- criterion 8
def test_criterion_08_landscape_topology():
    upper = ModelParams(omega=1.0, delta=0.5, kappa=1.0, tau=2.5, u=0.5, g=0.1)
    g_c = critical_coupling_thermal(ThermalPoint(upper, 0.5)).value
    failures = []

    res = landscape_grid(
        ThermalPoint(upper.replace(g=1.2 * g_c), 0.5), (-0.4, 0.4), (-0.4, 0.4), 81
    )
    on_axis = [m for m in res.minima if abs(m[1]) < 1e-12]
    if not (len(res.minima) == 2 and len(on_axis) == 2):
        failures.append(f"above threshold: {len(res.minima)} minima, {len(on_axis)} on-axis")

    res = landscape_grid(
        ThermalPoint(upper.replace(g=0.8 * g_c), 0.5), (-0.4, 0.4), (-0.4, 0.4), 81
    )
    origin_only = len(res.minima) == 1 and abs(res.minima[0][0]) < 1e-12
    if not origin_only:
        failures.append(f"below threshold: {len(res.minima)} minima")

    with pytest.warns(Warning):
        lower = ModelParams(omega=1.0, delta=0.5, kappa=1.0, tau=1.0, u=5.5, g=1.2 * 0.2509)
    res = landscape_grid(ThermalPoint(lower, 0.5), (-0.6, 0.6), (-0.6, 0.6), 97)
    broken = [
        m for m in res.minima if abs(m[1]) < 1e-12 and abs(m[0]) > 1e-12 and m[2] < 0
    ]
    if broken:
        failures.append(f"isotropic case has {len(broken)} broken real-axis minima")

    ok = not failures
    report(8, "landscape topology", ok, "; ".join(failures) or "2 / 1 / 0 broken minima as required")
    assert ok, failures


# ---------------------------------------------------------------- criterion 9
def test_criterion_09_mean_field_order_parameter_exponents():
    # mean-field curves carry no finite-size rounding, so the fits can sit
    # close to the transition; window in reduced distance [1e-3, 1e-2]
    window = (1e-3, 1e-2)
    reduced = np.geomspace(1.1e-3, 9.7e-3, 12)
    failures = []
    details = []
    for u, tau in ((0.5, 2.5), (1.5, 3.0)):
        base = ModelParams(omega=1.0, delta=0.5, kappa=1.2, u=u, tau=tau, g=0.1)

        g_c = critical_coupling_thermal(ThermalPoint(base, 0.5)).value
        controls = g_c * (1.0 + reduced)
        alphas = [
            order_parameter_thermal(ThermalPoint(base.replace(g=g), 0.5)).alpha_intensive
            for g in controls
        ]
        fit = fit_powerlaw(
            ScalingCurve(controls, np.array(alphas), 1, "alpha_mf"), g_c, window
        )
        details.append(f"(u={u},tau={tau}) vs g: {fit.exponent:.3f}")
        if abs(fit.exponent - 0.5) > 0.05:
            failures.append(details[-1])

        fixed_g = base.replace(g=0.5)
        t_c = critical_temperature(fixed_g).value
        temps = t_c * (1.0 - reduced)
        alphas = [
            order_parameter_thermal(ThermalPoint(fixed_g, t)).alpha_intensive
            for t in temps
        ]
        fit = fit_powerlaw(
            ScalingCurve(temps[::-1], np.array(alphas[::-1]), 1, "alpha_mf"), t_c, window
        )
        details.append(f"(u={u},tau={tau}) vs T: {fit.exponent:.3f}")
        if abs(fit.exponent - 0.5) > 0.05:
            failures.append(details[-1])
    ok = not failures
    report(9, "mean-field beta = 1/2", ok, "; ".join(details))
    assert ok, failures


# --------------------------------------------------------------- criterion 10
def test_criterion_10_solver_oracle_and_parity_purity():
    cases = []
    for g, tau, u, kappa in (
        (0.15, 2.5, 0.5, 1.2),
        (0.45, 2.5, 0.5, 1.2),
        (0.3, 1.0, 0.0, 0.0),
        (0.25, 3.0, -0.8, 2.0),
    ):
        for n_atoms, n_max in ((6, 40), (40, 45)):
            cases.append(
                ModelParams(
                    omega=1.0, delta=0.7, g=g, tau=tau, u=u, kappa=kappa, n_atoms=n_atoms
                    )
            )
            cases[-1] = (cases[-1], n_max)
    worst_dev, worst_purity = 0.0, 1.0
    for params, n_max in cases:
        for sector in (EVEN, ODD, FULL):
            h = build_hamiltonian(params, BasisSpec(params.n_atoms, n_max, sector))
            assert h.dim <= 2000
            dense = lowest_eigenpairs(h, k=4, method="dense")
            lanczos = lowest_eigenpairs(h, k=4, tol=1e-13, method="lanczos")
            worst_dev = max(
                worst_dev, float(np.max(np.abs(dense.eigenvalues - lanczos.eigenvalues)))
            )
            worst_purity = min(
                worst_purity,
                float(np.min(dense.parity_purity)),
                float(np.min(lanczos.parity_purity)),
            )
    ok = worst_dev <= 1e-10 and worst_purity >= 1 - 1e-10
    report(
        10,
        "solver oracle",
        ok,
        f"worst |dense - lanczos| = {worst_dev:.2e} (tol 1e-10), "
        f"worst parity purity = {1 - worst_purity:.2e} below 1 (tol 1e-10)",
    )
    assert ok


# --------------------------------------------------------------- criterion 11
def test_criterion_11_continuum_guard():
    with pytest.warns(Warning):
        params = ModelParams(omega=1.0, delta=1.0, g=0.2, u=2.5, n_atoms=4)
    with pytest.raises(CutoffRunaway) as exc:
        converge_cutoff(params, k=1, n_max_start=8, n_max_cap=512)
    trail = exc.value.trail
    energies = [e for _, e, _ in trail]
    ok = (
        len(trail) >= 5
        and trail[-1][0] > 512 / 1.5
        and all(b < a for a, b in zip(energies, energies[1:]))
    )
    report(
        11,
        "continuum guard",
        ok,
        f"CutoffRunaway after {len(trail)} rungs, ground energy ran from "
        f"{energies[0]:.2f} to {energies[-1]:.2f}",
    )
    assert ok
