"""Tour of the six coordinate maps.

Each admissible exponent pair (a, b) fixes one closed-form map y(x) from
the physical coordinate onto [0, 1].  This script tabulates the maps, shows
their monotonicity and inverse round-trips, and plots them side by side.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from heunqm import CASES, dy_dx, x_of_y, y_of_x

OUT = pathlib.Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)

lam = 1.0

print("case            (a, b)      domain of lambda*x")
for case in CASES.values():
    print(f"{case.name:15s} ({case.a}, {case.b})   [{case.xi_lo:.4g}, {case.xi_hi:.4g}]"
          + ("   (zero energy only)" if case.zero_energy_only else ""))

fig, axes = plt.subplots(2, 3, figsize=(12, 6), sharey=True)
for ax, case in zip(axes.ravel(), CASES.values()):
    lo = case.xi_lo if np.isfinite(case.xi_lo) else -8.0
    hi = case.xi_hi if np.isfinite(case.xi_hi) else 8.0
    xs = np.linspace(lo + 1e-6, hi - 1e-6, 400)
    ax.plot(xs, y_of_x(case, lam, xs), lw=2)
    ax.set_title(f"{case.name}  (a={case.a}, b={case.b})")
    ax.set_xlabel(r"$\lambda x$")
    ax.grid(alpha=0.3)
axes[0, 0].set_ylabel("y")
fig.tight_layout()
fig.savefig(OUT / "coordinate_maps.png", dpi=110)
print(f"\nfigure: {OUT / 'coordinate_maps.png'}")

# round-trip and derivative checks on interior grids
print("\ncase            max |x(y(x)) - x|    max |dy/dx - finite diff|")
for case in CASES.values():
    lo = case.xi_lo if np.isfinite(case.xi_lo) else -12.0
    hi = case.xi_hi if np.isfinite(case.xi_hi) else 12.0
    xs = np.linspace(lo + 1e-3, hi - 1e-3, 200)
    ys = y_of_x(case, lam, xs)
    rt = np.max(np.abs(x_of_y(case, lam, ys) - xs))
    eps = 1e-6
    fd = (y_of_x(case, lam, xs + eps) - y_of_x(case, lam, xs - eps)) / (2 * eps)
    dd = np.max(np.abs(dy_dx(case, lam, ys) - fd))
    print(f"{case.name:15s} {rt:18.3e} {dd:22.3e}")
