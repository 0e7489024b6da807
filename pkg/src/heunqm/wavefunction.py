"""Series wavefunctions: class parameter maps, the closed-form discrete
spectrum of the first restricted family, and truncated series assembly.

The expansion coefficients come from the class three-term recursions with
f_0 = 1 (the weight-function normalization is analytically unknown for two
of the families, so wavefunctions are returned unnormalized by default).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BreakdownError, ConstraintError, DomainError
from .heun import SolutionClass
from .orthopoly import (
    GROWTH_LIMIT,
    class_recursion_coeffs,
    class_recursion_rows,
)
from .specfun import JacobiIndex, jacobi_norm, jacobi_poly_table
from .transforms import y_pair

__all__ = [
    "GeneralMap",
    "SpecialMap",
    "RestrictedMap",
    "map_params_general",
    "map_params_special",
    "map_params_restricted",
    "SpectrumResult",
    "restricted_spectrum",
    "WavefunctionSeries",
    "build_series",
    "psi_series",
    "psi_series_grid",
    "series_coefficients",
]

_TERM_STOP = 1e-12
_DEFAULT_NTERMS = 64
_MAX_NTERMS = 512


# ----------------------------------------------------------------------
# parameter maps
# ----------------------------------------------------------------------


def _tau_squared(p):
    return 0.25 * ((p.a + p.b + p.c - 1.0) ** 2 - 4.0 * p.D)


@dataclass(frozen=True)
class GeneralMap:
    kappa: float
    sigma: float
    eta: float
    tau_squared: float
    z_squared: float

    @property
    def tau(self):
        if self.tau_squared < 0.0:
            return None
        return math.sqrt(self.tau_squared)


@dataclass(frozen=True)
class SpecialMap:
    theta: float
    tau_squared: float
    z: float

    @property
    def tau(self):
        if self.tau_squared < 0.0:
            return None
        return math.sqrt(self.tau_squared)


@dataclass(frozen=True)
class RestrictedMap:
    sigma: float
    eta: float
    tau: float
    z_squared: float


def map_params_general(p, basis):
    """Substitution tuple taking the general-class recursion into the
    deformed four-parameter family; an imaginary tau is carried as a
    negative tau_squared."""
    coeffs = class_recursion_coeffs(SolutionClass.GENERAL, p, basis, 0)
    return GeneralMap(
        kappa=p.d,
        sigma=0.5 * (basis.mu + 1.0),
        eta=0.5 * (basis.nu + 1.0),
        tau_squared=_tau_squared(p),
        z_squared=coeffs.R,
    )


def map_params_special(p, basis):
    """theta = arcosh(2d-1) >= 0 and the linear argument of the
    recursion-defined family."""
    if p.d <= 1.0:
        raise DomainError(f"special-class map requires d > 1, got d={p.d}")
    coeffs = class_recursion_coeffs(SolutionClass.SPECIAL, p, basis, 0)
    return SpecialMap(
        theta=math.acosh(2.0 * p.d - 1.0),
        tau_squared=_tau_squared(p),
        z=-coeffs.R_tilde / math.sqrt(p.d * (p.d - 1.0)),
    )


def map_params_restricted(p, basis):
    """Substitution tuple for the first restricted family; the squared
    argument is always negative, so the spectrum is purely discrete."""
    return RestrictedMap(
        sigma=0.5 * (basis.nu + 1.0),
        eta=0.5 * (basis.mu + 1.0),
        tau=0.5 * (p.a + p.b + p.c - 1.0),
        z_squared=-0.25 * (basis.mu + 1.0) ** 2,
    )


# ----------------------------------------------------------------------
# restricted-class spectrum
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumResult:
    levels: tuple
    n_top: int
    provenance: str


def restricted_spectrum(sys):
    """Closed-form bound levels 2E_k/lambda^2 of a first-restricted system.

    Valid on the cases whose energy parameter is -B/(d-1).  On the bounded
    case the closed form and the tabulated energy parameter disagree, so
    that case raises instead of guessing.  For the rows where nu (or c) is
    itself tied to the energy input, the formula is evaluated at this
    system's basis values.
    """
    if sys.cls is not SolutionClass.RESTRICTED_FIRST:
        raise ConstraintError("closed-form spectrum exists for the first restricted family")
    if sys.case.zero_energy_only:
        raise ConstraintError("zero-energy cases have no discrete spectrum formula")
    if sys.case.name == "half-half":
        raise ConstraintError(
            "spectrum formula ambiguous on the bounded case: its energy parameter is "
            "c^2/4 while the closed form is written for -B/(d-1); no resolution is "
            "provided, so this comparison is only performed on the unbounded cases"
        )
    p = sys.heun
    nu = sys.basis.nu
    a, b, c = p.a, p.b, p.c
    n_top = math.floor(0.5 * (a + b + c - nu) - 1.0)
    if n_top < 0:
        return SpectrumResult(levels=(), n_top=-1, provenance="closed form")
    levels = tuple(
        -((k + 1.0 + 0.5 * (nu - a - b - c)) ** 2) + 0.25 * (1.0 - b) ** 2
        for k in range(int(n_top) + 1)
    )
    return SpectrumResult(levels=levels, n_top=int(n_top), provenance="closed form")


# ----------------------------------------------------------------------
# series coefficients
# ----------------------------------------------------------------------


def _backward_minimal(zp, w, a, b, nterms, pad=40):
    """Minimal-solution values p_0 .. p_nterms by downward recursion."""
    top = nterms + pad
    q_next = 0.0
    q_cur = 1.0
    out = np.zeros(top + 1)
    out[top] = q_cur
    for n in range(top, 0, -1):
        q_prev = ((zp * w[n] - a[n]) * q_cur - b[n] * q_next) / b[n - 1]
        q_next, q_cur = q_cur, q_prev
        out[n - 1] = q_cur
        if abs(q_cur) > 1e250:
            out[n - 1 :] /= abs(q_cur)
            q_cur = out[n - 1]
            q_next = out[n]
    if out[0] == 0.0:
        raise BreakdownError("backward recursion produced a vanishing leading coefficient")
    return out[: nterms + 1] / out[0]


def series_coefficients(cls, p, basis, z_argument, nterms, pad=40):
    """Expansion coefficients f_n (f_0 = 1) of the wavefunction series.

    For the classes with polynomial recursion rows the coefficients are the
    class polynomial values themselves.  The remaining class carries its
    argument through a resolvent-like diagonal, and there the physical
    coefficients are the polynomial values rescaled by that resolvent,
    f_n = p_n (T_0 + D)/(T_n + D); the rescale is what the exact solutions
    require (checked against closed-form and finite-difference states).

    The forward recursion is the defining evaluation.  When the chain
    decouples (a vanishing off-diagonal inside the window) the series
    terminates there; when the forward values decay deep and then grow back,
    rounding has re-seeded the dominant solution and the coefficients are
    recomputed by downward recursion, the stable direction for a minimal
    solution.
    """
    top = nterms + pad + 2
    coeffs = class_recursion_coeffs(cls, p, basis, top)
    power, w, a, b = class_recursion_rows(cls, coeffs, p, basis, top)
    if z_argument is None:
        raise DomainError("series_coefficients requires an explicit argument")
    zp = float(z_argument)
    diag = {"terminated_at": None, "used_backward": False, "growth_flag": False}
    rescale = None
    if cls is SolutionClass.SPECIAL:
        tden = coeffs.T[: nterms + 1] + p.D
        if np.any(np.abs(tden) < 1e-9 * np.maximum(1.0, np.abs(coeffs.T[: nterms + 1]))):
            raise BreakdownError(
                "resonant denominator inside the series window; the coefficient "
                "rescale is singular there"
            )
        rescale = tden[0] / tden

    scale_b = np.maximum(1.0, np.abs(a))
    cut = None
    for n in range(nterms + 1):
        if not np.isfinite(w[n]) or abs(b[n]) < 1e-9 * scale_b[n]:
            cut = n
            break

    f = np.zeros(nterms + 1)
    f[0] = 1.0
    if cut is not None:
        # finite block: rows 0 .. cut-1 determine f_1 .. f_cut
        prev, curv = 0.0, 1.0
        for n in range(cut):
            nxt = ((zp * w[n] - a[n]) * curv - (b[n - 1] if n > 0 else 0.0) * prev) / b[n]
            f[n + 1] = nxt
            prev, curv = curv, nxt
        big = max(1.0, np.max(np.abs(f[: cut + 1])))
        if np.isfinite(w[cut]) and abs(b[cut]) < 1e-9 * scale_b[cut]:
            resid = (zp * w[cut] - a[cut]) * f[cut] - (b[cut - 1] if cut > 0 else 0.0) * (
                f[cut - 1] if cut > 0 else 0.0
            )
            if abs(resid) > 1e-5 * big * max(1.0, abs(a[cut])):
                raise BreakdownError(
                    f"recursion decouples at n={cut} but the finite block is inconsistent "
                    "with the requested argument"
                )
        else:
            # resonant denominator: the last block value itself must vanish
            if abs(f[cut]) > 1e-5 * big:
                raise BreakdownError(
                    f"resonant denominator at n={cut} with a non-vanishing block solution"
                )
            f[cut] = 0.0
        diag["terminated_at"] = cut
        return (f if rescale is None else f * rescale), diag

    fwd, grew = _fwd(zp, w, a, b, nterms)
    diag["growth_flag"] = grew
    # dip detection runs on the physical coefficient magnitudes: a deep dip
    # followed by geometric regrowth means rounding re-seeded the dominant
    # solution, while a mere pass through a polynomial zero does not regrow
    mag = np.abs(fwd if rescale is None else fwd * rescale)
    m = int(np.argmin(mag[1:])) + 1 if nterms >= 1 else 0
    head_max = np.max(mag[: m + 1])
    regrown = np.max(mag[m:]) if m <= nterms else 0.0
    if (
        m < nterms
        and head_max > 0
        and mag[m] < 1e-4 * head_max
        and regrown > 1e4 * head_max
    ):
        # the downward pass needs clean rows through the padding region
        tail = slice(nterms + 1, nterms + pad + 1)
        rows_ok = np.all(np.isfinite(w[tail])) and np.all(
            np.abs(b[tail]) > 1e-9 * np.maximum(1.0, np.abs(a[tail]))
        )
        if rows_ok:
            fwd = _backward_minimal(zp, w, a, b, nterms, pad=pad)
            diag["used_backward"] = True
    return (fwd if rescale is None else fwd * rescale), diag


def _fwd(zp, w, a, b, nterms):
    p = np.zeros(nterms + 1)
    p[0] = 1.0
    grew = False
    prev, cur = 0.0, 1.0
    for n in range(nterms):
        nxt = ((zp * w[n] - a[n]) * cur - (b[n - 1] if n > 0 else 0.0) * prev) / b[n]
        if abs(nxt) > GROWTH_LIMIT * max(abs(cur), 1e-300):
            grew = True
        p[n + 1] = nxt
        prev, cur = cur, nxt
    return p, grew


# ----------------------------------------------------------------------
# series assembly
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class WavefunctionSeries:
    basis: object
    y_power: float
    one_minus_y_power: float
    d_minus_y_power: float
    z_argument: float
    coefficients: np.ndarray
    nterms: int
    tail_estimate: float
    warnings: tuple


def _default_argument(sys):
    if sys.cls is SolutionClass.GENERAL:
        return map_params_general(sys.heun, sys.basis).z_squared
    if sys.cls is SolutionClass.SPECIAL:
        return map_params_special(sys.heun, sys.basis).z
    if sys.cls is SolutionClass.RESTRICTED_FIRST:
        return map_params_restricted(sys.heun, sys.basis).z_squared
    raise ConstraintError(f"no wavefunction construction for class {sys.cls.value}")


def build_series(sys, z_argument=None, nterms=_DEFAULT_NTERMS):
    """Assemble the truncated coefficient series for one system.

    Truncation keeps terms until three consecutive scaled coefficient
    magnitudes fall below 1e-12 of the running sum (or `nterms` is reached).
    """
    if sys.zero_energy_only:
        raise ConstraintError(f"case {sys.case.name} is solvable at zero energy only")
    if sys.cls not in (
        SolutionClass.GENERAL,
        SolutionClass.SPECIAL,
        SolutionClass.RESTRICTED_FIRST,
    ):
        raise ConstraintError(f"no wavefunction construction for class {sys.cls.value}")
    if not 0 < nterms <= _MAX_NTERMS:
        raise DomainError(f"nterms must lie in (0, {_MAX_NTERMS}], got {nterms}")
    if z_argument is None:
        z_argument = _default_argument(sys)
    f, diag = series_coefficients(sys.cls, sys.heun, sys.basis, z_argument, nterms)
    idx = JacobiIndex(sys.basis.mu, sys.basis.nu)
    norms = np.array([jacobi_norm(n, idx) for n in range(nterms + 1)])
    scaled = np.abs(f) * norms
    running = 0.0
    below = 0
    keep = nterms
    for n in range(nterms + 1):
        running += scaled[n]
        if n > 0 and scaled[n] < _TERM_STOP * running:
            below += 1
            if below >= 3:
                keep = n
                break
        else:
            below = 0
    coeff = f[: keep + 1].copy()
    tail = float(scaled[keep] / running) if running > 0 else 0.0
    warnings = []
    if diag["growth_flag"]:
        warnings.append("growth monitor: |p_{n+1}/p_n| exceeded 1e8; precision degraded")
    if keep == nterms and tail > 1e-8 and diag["terminated_at"] is None:
        warnings.append(f"series not converged at nterms={nterms}: tail {tail:.2e}")

    gamma_pow = sys.basis.gamma + 0.5 * sys.heun.c
    return WavefunctionSeries(
        basis=sys.basis,
        y_power=sys.basis.alpha,
        one_minus_y_power=sys.basis.beta,
        d_minus_y_power=gamma_pow,
        z_argument=float(z_argument),
        coefficients=coeff,
        nterms=keep,
        tail_estimate=tail,
        warnings=tuple(warnings),
    )


def _evaluate(series, sys, y, omy):
    y = np.asarray(y, dtype=float)
    omy = np.asarray(omy, dtype=float)
    idx = JacobiIndex(series.basis.mu, series.basis.nu)
    n_keep = len(series.coefficients) - 1
    table = jacobi_poly_table(n_keep, idx, y, one_minus_y=omy)
    norms = np.array([jacobi_norm(n, idx) for n in range(n_keep + 1)])
    total = np.tensordot(series.coefficients * norms, table, axes=(0, 0))
    with np.errstate(divide="ignore", invalid="ignore"):
        pref = (
            np.power(y, series.y_power)
            * np.power(omy, series.one_minus_y_power)
            * np.power((sys.heun.d - 1.0) + omy, series.d_minus_y_power)
        )
    pref = np.where(np.isfinite(pref), pref, 0.0)
    return pref * total


def psi_series(sys, x, z_argument=None, nterms=_DEFAULT_NTERMS):
    """Truncated series wavefunction at one point (unnormalized, f_0 = 1)."""
    series = build_series(sys, z_argument=z_argument, nterms=nterms)
    y, omy = y_pair(sys.case, sys.lam, x)
    return float(_evaluate(series, sys, y, omy))


def psi_series_grid(sys, xs, z_argument=None, nterms=_DEFAULT_NTERMS, normalize=False, series=None):
    """Series wavefunction sampled over a grid.

    Returns (values, series).  With normalize=True the result is scaled to
    unit L2 norm on the grid (trapezoid rule), which for the restricted
    class plays the role of the discrete-weight normalization.
    """
    if series is None:
        series = build_series(sys, z_argument=z_argument, nterms=nterms)
    xs = np.asarray(xs, dtype=float)
    y, omy = y_pair(sys.case, sys.lam, xs)
    vals = _evaluate(series, sys, np.asarray(y), np.asarray(omy))
    if normalize:
        nrm = math.sqrt(np.trapezoid(vals**2, xs))
        if nrm == 0.0 or not math.isfinite(nrm):
            raise BreakdownError("cannot normalize: vanishing or non-finite norm")
        vals = vals / nrm
    return vals, series
