"""Superradiant phase transitions of the anisotropic Dicke model with
Stark and A-square couplings: exact diagonalization, mean-field theory
at zero and finite temperature, and finite-size scaling analysis."""

from ._version import __version__
from .meanfield_thermal import (
    ThermalCritical,
    ThermalPoint,
    ThermalSolution,
    critical_coupling_thermal,
    critical_temperature,
    free_energy,
    landscape_grid,
    order_parameter_thermal,
)
from .meanfield_zero import (
    CriticalCouplingZero,
    MeanFieldSolutionZero,
    critical_coupling_zero,
    energy_per_atom,
    minimize_energy_grid,
    order_parameters,
)
from .model import (
    EVEN,
    FULL,
    ODD,
    BasisSpec,
    ModelParams,
    SparseHamiltonian,
    build_hamiltonian,
    matvec,
    parity_of,
)
from .scaling import (
    ExponentFit,
    ScalingCurve,
    collapse_quality,
    fit_criticality_n_scaling,
    fit_powerlaw,
)
from .spectra import (
    Observables,
    SpectrumResult,
    converge_cutoff,
    lowest_eigenpairs,
    observables,
    solve_spectrum,
)
from .sweep import (
    Axis,
    EdSettings,
    SweepResult,
    SweepSpec,
    emit,
    extract_boundary,
    read_rows_csv,
    run_sweep,
)

__all__ = [
    "__version__",
    "EVEN",
    "ODD",
    "FULL",
    "BasisSpec",
    "ModelParams",
    "SparseHamiltonian",
    "build_hamiltonian",
    "matvec",
    "parity_of",
    "SpectrumResult",
    "Observables",
    "lowest_eigenpairs",
    "solve_spectrum",
    "observables",
    "converge_cutoff",
    "MeanFieldSolutionZero",
    "CriticalCouplingZero",
    "critical_coupling_zero",
    "energy_per_atom",
    "order_parameters",
    "minimize_energy_grid",
    "ThermalPoint",
    "ThermalCritical",
    "ThermalSolution",
    "free_energy",
    "critical_coupling_thermal",
    "critical_temperature",
    "order_parameter_thermal",
    "landscape_grid",
    "ScalingCurve",
    "ExponentFit",
    "fit_powerlaw",
    "fit_criticality_n_scaling",
    "collapse_quality",
    "Axis",
    "EdSettings",
    "SweepSpec",
    "SweepResult",
    "run_sweep",
    "emit",
    "read_rows_csv",
    "extract_boundary",
]
