"""Free-energy landscapes over the complex photon amplitude.

Two parameter sets at the same temperature: an anisotropic case where a
pair of symmetry-broken minima appears on the real axis above the critical
coupling, and an isotropic case with a strong Stark term where no broken
minimum exists at all (the landscape runs away; only a pair of off-axis
maxima remains).

Run from the repository root:  python3 demos/03_free_energy_landscape.py
"""

import warnings
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from dickestark import (
    ModelParams,
    ThermalPoint,
    critical_coupling_thermal,
    landscape_grid,
    order_parameter_thermal,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

temperature = 0.5
anisotropic = ModelParams(omega=1.0, delta=0.5, kappa=1.0, tau=2.5, u=0.5, g=0.1)
g_c = critical_coupling_thermal(ThermalPoint(anisotropic, temperature)).value
print(f"anisotropic critical coupling at T = {temperature}: {g_c:.4f}")

with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # the isotropic point sits in the continuum regime
    isotropic = ModelParams(omega=1.0, delta=0.5, kappa=1.0, tau=1.0, u=5.5, g=1.2 * 0.2509)

panels = [
    ("anisotropic, below threshold", anisotropic.replace(g=0.8 * g_c), (-0.4, 0.4)),
    ("anisotropic, above threshold", anisotropic.replace(g=1.2 * g_c), (-0.4, 0.4)),
    ("isotropic + strong Stark", isotropic, (-0.6, 0.6)),
]

fig, axes = plt.subplots(1, 3, figsize=(14, 4))
for ax, (title, params, box) in zip(axes, panels):
    point = ThermalPoint(params, temperature)
    res = landscape_grid(point, box, box, resolution=97)
    sol = order_parameter_thermal(point)
    mesh = ax.pcolormesh(res.x, res.y, res.values.T, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="free energy per atom (relative)")
    for x, y, _ in res.minima:
        ax.plot(x, y, "r*", ms=12)
    for x, y, _ in res.maxima:
        ax.plot(x, y, "w^", ms=8)
    ax.set_title(f"{title}\nphase: {sol.phase}")
    ax.set_xlabel("Re amplitude")
    ax.set_ylabel("Im amplitude")
    print(f"{title}: {len(res.minima)} minima, {len(res.maxima)} maxima, phase {sol.phase}")

fig.tight_layout()
fig.savefig(OUT / "03_free_energy_landscape.png", dpi=150)
print(f"wrote {OUT / '03_free_energy_landscape.png'}")
