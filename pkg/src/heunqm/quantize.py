"""Locating bound states of general- and special-class systems.

A truncated series wavefunction solves the stationary equation only when
the expansion coefficients are the minimal solution of the class recursion,
which happens at isolated values of the row's energy dial.  The secular
function below is the initial-condition residual of the downward-recursion
(minimal) solution; its zeros in the dial are the bound states.  The
finite-difference oracle supplies starting windows.
"""

import math

import numpy as np

from .errors import ConstraintError, NumericError
from .orthopoly import class_recursion_coeffs, class_recursion_rows
from .potentials import build_system, energy_dial_for
from .verifier import default_grid, numeric_eigenvalues
from .wavefunction import _default_argument

__all__ = ["secular_residual", "refine_dial", "bound_state_systems", "dial_from_energy"]


def secular_residual(sys, nterms=96, pad=48):
    """Scaled violation of the f_{-1} = 0 initial condition by the minimal
    solution.  Vanishes exactly at the system's bound states; NaN when the
    recursion window contains a resonant or decoupled row."""
    top = nterms + pad + 2
    coeffs = class_recursion_coeffs(sys.cls, sys.heun, sys.basis, top)
    power, w, a, b = class_recursion_rows(sys.cls, coeffs, sys.heun, sys.basis, top)
    if np.any(~np.isfinite(w[: nterms + pad])):
        return float("nan")
    if np.any(np.abs(b[: nterms + pad]) < 1e-12 * np.maximum(1.0, np.abs(a[: nterms + pad]))):
        return float("nan")
    zp = _default_argument(sys)
    q_next, q_cur = 0.0, 1.0
    top_i = nterms + pad
    vals = np.zeros(top_i + 1)
    vals[top_i] = 1.0
    for n in range(top_i, 0, -1):
        q_prev = ((zp * w[n] - a[n]) * q_cur - b[n] * q_next) / b[n - 1]
        q_next, q_cur = q_cur, q_prev
        vals[n - 1] = q_cur
        if abs(q_cur) > 1e250:
            vals[n - 1 :] /= abs(q_cur)
            q_cur = vals[n - 1]
            q_next = vals[n]
    scale = abs(zp * w[0] - a[0]) * abs(vals[0]) + abs(b[0] * vals[1])
    if scale == 0.0:
        return float("nan")
    return ((zp * w[0] - a[0]) * vals[0] - b[0] * vals[1]) / scale


def dial_from_energy(case, energy, free):
    """Value of the row's energy dial that realizes the given 2E/lambda^2."""
    name = case if isinstance(case, str) else case.name
    if name == "half-half":
        return 0.25 * float(free["c"]) ** 2 - energy
    return -energy * (float(free["d"]) - 1.0)


def refine_dial(cls, case, u, free, dial_value, lam=1.0, rel_window=0.02, n_scan=48):
    """Polish a dial estimate to a secular-function zero by scan + bisection.

    Returns the refined PhysicalSystem, or None when no clean sign change of
    the secular function sits inside the window.
    """
    dial_name = energy_dial_for(case)
    base = dict(free)
    base.pop(dial_name, None)
    span = max(abs(dial_value) * rel_window, 1e-3)

    def theta(v):
        kw = dict(base)
        kw[dial_name] = v
        try:
            s = build_system(cls, case, u=u, lam=lam, **kw)
        except ConstraintError:
            return float("nan"), None
        return secular_residual(s), s

    grid = np.linspace(dial_value - span, dial_value + span, n_scan)
    vals = np.array([theta(v)[0] for v in grid])
    best = None
    for i in range(len(grid) - 1):
        f1, f2 = vals[i], vals[i + 1]
        if not (math.isfinite(f1) and math.isfinite(f2)) or f1 * f2 > 0:
            continue
        mid, _ = theta(0.5 * (grid[i] + grid[i + 1]))
        if not math.isfinite(mid) or abs(mid) > 2.0 * max(abs(f1), abs(f2)):
            continue  # pole-like bracket
        lo, hi = grid[i], grid[i + 1]
        flo = f1
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm, _ = theta(mid)
            if not math.isfinite(fm):
                break
            if flo * fm <= 0:
                hi = mid
            else:
                lo, flo = mid, fm
            if hi - lo < 1e-14 * max(1.0, abs(mid)):
                break
        cand = 0.5 * (lo + hi)
        fc, sysc = theta(cand)
        if sysc is not None and math.isfinite(fc):
            if best is None or abs(fc) < abs(best[0]):
                best = (fc, sysc)
    return None if best is None else best[1]


def bound_state_systems(cls, case, u, free, lam=1.0, count=3, npoints=2048, xi_span=30.0):
    """Systems quantized on the lowest bound states of one potential row.

    The finite-difference oracle proposes energies; each is mapped to the
    row's dial and polished against the secular function.  Only successfully
    refined states are returned.
    """
    dial_name = energy_dial_for(case)
    probe = dict(free)
    probe.setdefault(dial_name, 1.0)
    sys0 = build_system(cls, case, u=u, lam=lam, **probe)
    grid = default_grid(sys0, npoints=npoints, xi_span=xi_span)
    report = numeric_eigenvalues(sys0, grid, count + 2)
    out = []
    for e in report.levels[: count + 2]:
        if len(out) >= count:
            break
        if sys0.case.name != "half-half" and e >= -1e-3:
            continue  # unbound or threshold level on an unbounded domain
        dial = dial_from_energy(case, e, probe)
        refined = refine_dial(cls, case, u, free, dial, lam=lam)
        if refined is not None:
            out.append(refined)
    if not out:
        raise NumericError(
            f"no bound state found for row ({cls.value}, {sys0.case.name}) "
            "within the oracle windows"
        )
    return out
