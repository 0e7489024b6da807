"""Gallery of solvable potentials.

Builds one system per solution class on each coordinate case and plots
2V(x)/lambda^2.  The restricted family also demonstrates the closed x-space
forms: a trigonometric well with singular walls, a hyperbolic well with a
repulsive core, an asymmetric step-well on the full line, and a screened
singular well on the half line.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from heunqm import SolutionClass, build_system, potential_value, restricted_x_potential

OUT = pathlib.Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)

G, S, R = SolutionClass.GENERAL, SolutionClass.SPECIAL, SolutionClass.RESTRICTED_FIRST

SYSTEMS = [
    (G, "half-half", dict(u=(0.5,), d=2.0, c=1.4, A=-0.2, B=0.3, D=-1.0)),
    (G, "one-one", dict(u=(0.0, -1.0, -4.0), d=1.8, c=1.1, B=0.4)),
    (S, "half-one", dict(u=(0.0, -8.0), d=2.2, c=0.7, A=-0.4, B=0.8)),
    (S, "zero-one", dict(u=(-3.0, -2.0), d=2.1, c=0.8, A=-0.5, B=0.1)),
    (R, "half-half", dict(u=(), d=1.9, c=3.2, A=-0.3, B=0.4)),
    (R, "half-one", dict(u=(), d=2.0, c=4.0, A=-1.0, B=1.0)),
    (R, "one-one", dict(u=(-0.9,), d=1.7, c=5.0, B=0.7)),
    (R, "zero-one", dict(u=(-2.0,), d=2.2, A=-0.5, B=1.2)),
]

fig, axes = plt.subplots(2, 4, figsize=(15, 6))
for ax, (cls, case, kw) in zip(axes.ravel(), SYSTEMS):
    kw = dict(kw)
    u = kw.pop("u")
    sys = build_system(cls, case, u=u, lam=1.0, **kw)
    if case == "half-half":
        xs = np.linspace(-1.45, 1.45, 400)
    elif case == "one-one":
        xs = np.linspace(-10, 10, 400)
    else:
        xs = np.linspace(0.15, 12, 400)
    v = potential_value(sys, xs)
    ax.plot(xs, v, lw=2)
    if cls is R:
        ax.plot(xs, restricted_x_potential(sys, xs), "r:", lw=1.5, label="closed x-form")
        ax.legend(fontsize=7)
    ax.axhline(sys.energy_param, color="gray", lw=0.8, ls="--")
    ax.set_title(f"{cls.value} / {case}", fontsize=9)
    ax.set_ylim(min(-3, np.min(v) * 1.1), 4)
    ax.grid(alpha=0.3)
    print(f"{cls.value:17s} {case:10s} u={tuple(round(x, 4) for x in sys.u)} "
          f"2E/lam^2={sys.energy_param:+.4f}")
fig.suptitle("potential gallery: dashed line marks the system's energy parameter")
fig.tight_layout()
fig.savefig(OUT / "potential_gallery.png", dpi=110)
print(f"\nfigure: {OUT / 'potential_gallery.png'}")
