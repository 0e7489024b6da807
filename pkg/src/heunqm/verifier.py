"""Independent finite-difference oracle in configuration space.

Consumes only potential samples, an energy and wavefunction samples, never
recursion coefficients or basis parameters, so agreement with the series
machinery is a genuine cross-check.  All energies are the dimensionless
combination 2E/lambda^2 and the working coordinate is xi = lambda*x.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError, NumericError
from .potentials import potential_value

__all__ = [
    "Grid",
    "default_grid",
    "ResidualReport",
    "schrodinger_residual",
    "EigenReport",
    "numeric_eigenvalues",
]

_V_CAP = 1e6


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max] with npoints >= 64."""

    x_min: float
    x_max: float
    npoints: int

    def __post_init__(self):
        if self.npoints < 64:
            raise DomainError(f"grid needs at least 64 points, got {self.npoints}")
        if not (self.x_max > self.x_min):
            raise DomainError("degenerate grid: x_max must exceed x_min")

    @property
    def h(self):
        return (self.x_max - self.x_min) / (self.npoints - 1)

    def points(self):
        return np.linspace(self.x_min, self.x_max, self.npoints)

    def refined(self):
        return Grid(self.x_min, self.x_max, 2 * self.npoints - 1)


def _inner_cutoff(sys, lo, hi, cap=_V_CAP):
    """Smallest xi >= lo with |2V/lambda^2| below `cap` (singular cores)."""
    lam = sys.lam
    xi = np.geomspace(max(lo, 1e-6), hi, 400)
    v = np.abs(potential_value(sys, xi / lam))
    ok = np.where(v < cap)[0]
    if ok.size == 0:
        raise DomainError("potential exceeds the conditioning cap over the whole window")
    return float(xi[ok[0]])


def default_grid(sys, npoints=8192, xi_span=40.0, cap=_V_CAP):
    """Case-appropriate grid in physical x.

    Bounded case: the full box, walls pulled in where the potential passes
    the conditioning cap.  Half-line cases: [cutoff, xi_span]/lambda with the
    cutoff set by the cap.  Full line: symmetric +/- xi_span/lambda.
    """
    lam = sys.lam
    name = sys.case.name
    if name == "half-half":
        half = 0.5 * math.pi
        lo = -half + 1e-3
        hi = half - 1e-3
        v_lo = abs(potential_value(sys, lo / lam))
        v_hi = abs(potential_value(sys, hi / lam))
        if v_lo > cap:
            lo = -half + _inner_cutoff_box(sys, half, cap, side=-1)
        if v_hi > cap:
            hi = half - _inner_cutoff_box(sys, half, cap, side=+1)
        return Grid(lo / lam, hi / lam, npoints)
    if name == "one-one":
        return Grid(-xi_span / lam, xi_span / lam, npoints)
    if name in ("half-one", "zero-one", "half-threehalf"):
        lo = _inner_cutoff(sys, 1e-3, xi_span, cap=cap)
        return Grid(lo / lam, xi_span / lam, npoints)
    if name == "zero-threehalf":
        lo = _inner_cutoff(sys, 2.0 + 1e-6, xi_span, cap=cap)
        return Grid(lo / lam, xi_span / lam, npoints)
    raise DomainError(f"no default grid for case {name}")


def _inner_cutoff_box(sys, half, cap, side):
    lam = sys.lam
    eps = np.geomspace(1e-7, 0.5, 300)
    xi = side * (half - eps)
    v = np.abs(potential_value(sys, xi / lam))
    ok = np.where(v < cap)[0]
    if ok.size == 0:
        raise DomainError("potential exceeds the conditioning cap across the box")
    return float(eps[ok[0]])


@dataclass(frozen=True)
class ResidualReport:
    """RMS residual of the transformed stationary equation.

    `residual` and `residual_fine` are the relative rms at spacings h and
    h/2; `residual_extrapolated` removes the leading h^2 discretization term
    pointwise before taking the rms, and `discretization` estimates that
    removed component.
    """

    residual: float
    residual_fine: float
    residual_extrapolated: float
    discretization: float
    grid: Grid


def _relative_residual(v, e, psi, hxi, keep):
    lap = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / hxi**2
    res = (-lap + (v[1:-1] - e) * psi[1:-1])[keep]
    denom = ((v[1:-1] - e) * psi[1:-1])[keep]
    scale = math.sqrt(float(np.mean(denom**2)))
    if scale == 0.0:
        raise NumericError("residual normalization vanished: (V - E) psi is zero on the grid")
    return res, scale


def schrodinger_residual(sys, psi_sampler, energy, grid, edge_exclude=None):
    """Relative rms of [-d^2/dxi^2 + v(xi) - e] psi over interior points.

    `energy` is 2E/lambda^2; `psi_sampler` maps physical x (array) to psi.
    The same residual is recomputed at half the spacing and the shared
    interior points are Richardson-combined, removing the O(h^2)
    discretization component.  `edge_exclude` interior points are dropped at
    each end of the window (default npoints/32): next to a singular wall the
    second difference no longer resolves the local power behaviour, so the
    first grid cells carry pure discretization noise.
    """
    lam = sys.lam
    if edge_exclude is None:
        edge_exclude = max(2, grid.npoints // 32)
    fine = grid.refined()
    x_f = fine.points()
    psi_f = np.asarray(psi_sampler(x_f), dtype=float)
    if not np.all(np.isfinite(psi_f)):
        raise NumericError("wavefunction sampler returned non-finite values")
    v_f = np.asarray(potential_value(sys, x_f), dtype=float)
    psi_c = psi_f[::2]
    v_c = v_f[::2]
    h_c = lam * grid.h
    n_int = grid.npoints - 2
    if 2 * edge_exclude >= n_int:
        raise DomainError("edge exclusion swallows the whole interior")
    keep_c = slice(edge_exclude, n_int - edge_exclude)
    keep_f = slice(2 * edge_exclude, (fine.npoints - 2) - 2 * edge_exclude)
    res_c, scale_c = _relative_residual(v_c, energy, psi_c, h_c, keep_c)
    res_f, scale_f = _relative_residual(v_f, energy, psi_f, 0.5 * h_c, keep_f)
    # fine-grid residual restricted to the coarse interior points
    res_f_on_c = res_f[1::2]
    extrap = (4.0 * res_f_on_c - res_c) / 3.0
    rms = lambda r, s: math.sqrt(float(np.mean(r**2))) / s
    return ResidualReport(
        residual=rms(res_c, scale_c),
        residual_fine=rms(res_f, scale_f),
        residual_extrapolated=rms(extrap, scale_c),
        discretization=rms(res_c - extrap, scale_c),
        grid=grid,
    )


@dataclass(frozen=True)
class EigenReport:
    levels: tuple
    levels_coarse: tuple
    levels_fine: tuple
    convergence: tuple
    grid: Grid


def _fd_levels(v, hxi, count):
    diag = 2.0 / hxi**2 + v
    off = np.full(v.size - 1, -1.0 / hxi**2)
    try:
        vals = scipy.linalg.eigh_tridiagonal(
            diag, off, select="i", select_range=(0, count - 1), eigvals_only=True
        )
    except Exception as exc:  # pragma: no cover - solver failure surface
        raise NumericError(f"tridiagonal eigensolver failed: {exc}") from exc
    return vals


def numeric_eigenvalues(sys, grid, count):
    """Lowest `count` levels (2E/lambda^2) of the discretized operator.

    Dirichlet walls at the grid ends; a second solve at half the spacing
    gives the Richardson-extrapolated levels and a convergence estimate.
    """
    lam = sys.lam
    fine = grid.refined()
    x_c = grid.points()
    x_f = fine.points()
    v_c = np.asarray(potential_value(sys, x_c), dtype=float)[1:-1]
    v_f = np.asarray(potential_value(sys, x_f), dtype=float)[1:-1]
    h_c = lam * grid.h
    lev_c = _fd_levels(v_c, h_c, count)
    lev_f = _fd_levels(v_f, 0.5 * h_c, count)
    extrap = (4.0 * lev_f - lev_c) / 3.0
    conv = np.abs(lev_f - lev_c)
    return EigenReport(
        levels=tuple(float(v) for v in extrap),
        levels_coarse=tuple(float(v) for v in lev_c),
        levels_fine=tuple(float(v) for v in lev_f),
        convergence=tuple(float(v) for v in conv),
        grid=grid,
    )
