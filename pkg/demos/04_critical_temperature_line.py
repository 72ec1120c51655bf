"""Thermal phase diagram: the critical-temperature line.

The second-order transition line T_c(g) terminates at the quantum critical
point, below which no finite-temperature transition exists.  The thermal
order parameter is shown growing from zero as the system is cooled through
the line at a fixed coupling.

Run from the repository root:  python3 demos/04_critical_temperature_line.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dickestark import (
    ModelParams,
    ThermalPoint,
    critical_coupling_zero,
    critical_temperature,
    order_parameter_thermal,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

base = ModelParams(omega=1.0, delta=0.5, u=0.5, tau=1.5, kappa=1.2)
g_c0 = critical_coupling_zero(base).value
print(f"quantum critical point: {g_c0:.5f}")

couplings = np.linspace(g_c0 * 1.001, 1.2, 60)
t_line = [critical_temperature(base.replace(g=float(g))).value for g in couplings]

fixed = base.replace(g=0.8)
t_c = critical_temperature(fixed).value
temps = t_c * np.linspace(0.4, 1.3, 40)
amps = [
    order_parameter_thermal(ThermalPoint(fixed, float(t))).alpha_intensive for t in temps
]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.plot(couplings, t_line, "-", lw=2)
ax1.plot([g_c0], [0.0], "ko", label="quantum critical point")
ax1.set_xlabel("coupling strength")
ax1.set_ylabel("critical temperature")
ax1.set_title("transition line terminating at T = 0")
ax1.legend()

ax2.plot(temps / t_c, np.square(amps), "o-", ms=4)
ax2.axvline(1.0, color="gray", ls="--", lw=1)
ax2.set_xlabel("T / T_c")
ax2.set_ylabel("squared photon amplitude (intensive)")
ax2.set_title(f"order parameter at g = {fixed.g}")
fig.tight_layout()
fig.savefig(OUT / "04_critical_temperature_line.png", dpi=150)
print(f"wrote {OUT / '04_critical_temperature_line.png'}")
