"""Desk-scale phase diagram in the coupling-Stark plane.

Runs a small exact-diagonalization grid (N = 40 atoms keeps it quick),
extracts the photon-density threshold boundary, and overlays the analytic
critical line.  The full-size figure (N = 200) takes a few minutes; bump
n_atoms below to reproduce it.

Run from the repository root:  python3 demos/02_phase_diagram.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dickestark import (
    Axis,
    EdSettings,
    ModelParams,
    SweepSpec,
    critical_coupling_zero,
    emit,
    extract_boundary,
    run_sweep,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

base = ModelParams(omega=1.0, delta=2.0, tau=2.5, kappa=1.2, n_atoms=40)

spec = SweepSpec(
    base=base,
    axis1=Axis.linspace("g", 0.05, 0.75, 29),
    axis2=Axis.linspace("U", 0.0, 1.8, 10),
    observables=("nph_density", "g_c0"),
    ed=EdSettings(k=2, tail_tol=1e-7, energy_tol=1e-7, n_max_start=12),
    workers=2,
)
result = run_sweep(spec)
emit(result, "csv", OUT / "02_phase_diagram.csv")
print(f"swept {len(result.rows)} grid points, {result.error_count} errors")

g_vals = np.array(spec.axis1.values)
u_vals = np.array(spec.axis2.values)
density = np.full((len(g_vals), len(u_vals)), np.nan)
index = {v: i for i, v in enumerate(g_vals)}
for row in result.rows:
    i = index[row["g"]]
    j = list(u_vals).index(row["U"])
    density[i, j] = row["nph_density"]

boundary = dict(extract_boundary(result))
analytic = [critical_coupling_zero(base.replace(u=float(u))).value for u in u_vals]

fig, ax = plt.subplots(figsize=(6, 5))
mesh = ax.pcolormesh(u_vals, g_vals, density, shading="nearest", cmap="magma")
fig.colorbar(mesh, label="photons per atom")
ax.plot(u_vals, analytic, "w--", lw=2, label="analytic critical line")
crossings = [boundary.get(float(u)) for u in u_vals]
ax.plot(u_vals, crossings, "co", ms=5, label="threshold crossing")
ax.set_xlabel("Stark coupling")
ax.set_ylabel("coupling strength")
ax.legend(loc="upper right")
ax.set_title(f"superradiant boundary, N = {base.n_atoms}")
fig.tight_layout()
fig.savefig(OUT / "02_phase_diagram.png", dpi=150)
print(f"wrote {OUT / '02_phase_diagram.png'}")
