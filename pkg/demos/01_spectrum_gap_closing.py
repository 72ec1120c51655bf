"""Gap closing across the superradiant transition.

Sweeps the coupling through the critical point at a modest atom count and
plots the lowest excitation gap together with the photon density.  The gap
between the two lowest states (which live in opposite parity sectors)
closes at the transition and reopens as a quasi-degenerate doublet forms.

Run from the repository root:  python3 demos/01_spectrum_gap_closing.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dickestark import ModelParams, converge_cutoff, critical_coupling_zero, observables

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

params = ModelParams(omega=1.0, delta=0.5, u=0.5, tau=2.5, kappa=1.2, n_atoms=24)
g_c0 = critical_coupling_zero(params).value
print(f"analytic critical coupling: {g_c0:.5f}")

couplings = g_c0 * np.linspace(0.3, 1.8, 31)
gaps, densities = [], []
for g in couplings:
    point = params.replace(g=float(g))
    spectrum = converge_cutoff(point, k=2, tail_tol=1e-8, energy_tol=1e-8)
    obs = observables(spectrum, point)
    gaps.append(obs.epsilon)
    densities.append(obs.nph_density)
    print(f"g = {g:.4f}  gap = {obs.epsilon:.5f}  photons/atom = {obs.nph_density:.5f}")

fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
ax1.plot(couplings / g_c0, gaps, "o-", ms=4)
ax1.axvline(1.0, color="gray", ls="--", lw=1)
ax1.set_ylabel("excitation gap")
ax2.plot(couplings / g_c0, densities, "s-", ms=4, color="tab:red")
ax2.axvline(1.0, color="gray", ls="--", lw=1)
ax2.set_xlabel("coupling / critical coupling")
ax2.set_ylabel("photons per atom")
fig.suptitle(f"N = {params.n_atoms}: gap closing at the superradiant transition")
fig.tight_layout()
fig.savefig(OUT / "01_spectrum_gap_closing.png", dpi=150)
print(f"wrote {OUT / '01_spectrum_gap_closing.png'}")
