"""Scalar special-function kernels shared by the rest of the package.

Shifted Jacobi polynomials on [0, 1], their orthonormal scaling factors,
log-gamma (real and complex), the Gauss hypergeometric series and the lower
incomplete beta function.  Everything here is pure and deterministic.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError

__all__ = [
    "JacobiIndex",
    "jacobi_poly",
    "jacobi_poly_table",
    "jacobi_norm",
    "log_gamma",
    "log_gamma_complex",
    "gauss_2f1",
    "incomplete_beta_lower",
    "complete_beta",
]

# Lanczos rational approximation, g = 7, 9 coefficients.  Relative accuracy
# of the reconstructed gamma is a few ulp over the right half plane.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_TWO_PI = 0.91893853320467274178
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class JacobiIndex:
    """Index pair (mu, nu) of a shifted Jacobi polynomial; both must exceed -1."""

    mu: float
    nu: float

    def __post_init__(self):
        if not (self.mu > -1.0 and self.nu > -1.0):
            raise DomainError(
                f"Jacobi indices require mu > -1 and nu > -1, got mu={self.mu}, nu={self.nu}"
            )


def _lanczos_loggamma(w):
    """Lanczos series for log Gamma, valid for Re(w) >= 0.5 (complex ok)."""
    z = w - 1.0
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        acc = acc + _LANCZOS_COEFFS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    if isinstance(t, complex):
        return _LOG_SQRT_TWO_PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)
    return _LOG_SQRT_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def log_gamma(x):
    """ln|Gamma(x)| for real x away from the poles at 0, -1, -2, ...

    Uses the Lanczos approximation directly for x >= 0.5 and the reflection
    formula below that.
    """
    x = float(x)
    if x >= 0.5:
        return _lanczos_loggamma(x)
    if x == math.floor(x):
        raise PoleError(f"log_gamma pole at x={x}")
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return _LOG_PI - math.log(abs(math.sin(math.pi * x))) - _lanczos_loggamma(1.0 - x)


def log_gamma_complex(w):
    """(ln|Gamma(w)|, arg Gamma(w)) for complex w off the poles.

    The argument is the principal value of the continued Lanczos/reflection
    expression, which is what enters phase-shift differences.
    """
    w = complex(w)
    if w.imag == 0.0 and w.real <= 0.0 and w.real == math.floor(w.real):
        raise PoleError(f"log_gamma_complex pole at w={w}")
    if w == 0:
        raise PoleError("log_gamma_complex pole at w=0")
    if w.real >= 0.5:
        val = _lanczos_loggamma(w)
    else:
        s = cmath.sin(cmath.pi * w)
        if s == 0:
            raise PoleError(f"log_gamma_complex pole at w={w}")
        val = _LOG_PI - cmath.log(s) - _lanczos_loggamma(1.0 - w)
    return val.real, val.imag


def jacobi_poly(n, idx, y):
    """Shifted Jacobi polynomial P_n^{(mu,nu)}(y) on [0, 1].

    Shifted convention: equals the classical polynomial on [-1, 1] evaluated
    at 2y - 1, so P_n^{(mu,nu)}(1) = Gamma(n+mu+1) / (n! Gamma(mu+1)).
    Evaluated by the forward three-term recursion in the degree, which is the
    stable path on the orthogonality interval.

    Parameters
    ----------
    n : int
        Degree, >= 0.
    idx : JacobiIndex
        Index pair (mu, nu).
    y : float or ndarray
        Argument(s) in [0, 1].

    Returns
    -------
    float or ndarray
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    table = jacobi_poly_table(n, idx, y)
    return table[n]


def jacobi_poly_table(nmax, idx, y, one_minus_y=None):
    """All shifted Jacobi polynomials P_0 .. P_nmax at y, stacked on axis 0.

    Passing `one_minus_y` forms the classical argument as y - (1-y), which
    keeps full precision next to the endpoints.
    """
    if not isinstance(idx, JacobiIndex):
        idx = JacobiIndex(*idx)
    a, b = idx.mu, idx.nu
    y = np.asarray(y, dtype=float)
    if one_minus_y is None:
        t = 2.0 * y - 1.0
    else:
        t = y - np.asarray(one_minus_y, dtype=float)
    out = np.zeros((nmax + 1,) + t.shape)
    out[0] = 1.0
    if nmax == 0:
        return out
    out[1] = 0.5 * ((a - b) + (a + b + 2.0) * t)
    for n in range(2, nmax + 1):
        # Abramowitz & Stegun 22.7.1 with alpha=mu, beta=nu
        c1 = 2.0 * n * (n + a + b) * (2.0 * n + a + b - 2.0)
        c2 = (2.0 * n + a + b - 1.0) * (a * a - b * b)
        c3 = (2.0 * n + a + b - 2.0) * (2.0 * n + a + b - 1.0) * (2.0 * n + a + b)
        c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + a + b)
        out[n] = ((c2 + c3 * t) * out[n - 1] - c4 * out[n - 2]) / c1
    return out


def jacobi_norm(n, idx):
    """Orthonormal scaling factor for the shifted Jacobi basis.

    sqrt((2n+mu+nu+1) n! Gamma(n+mu+nu+1) / (Gamma(n+mu+1) Gamma(n+nu+1))),
    computed through log-gamma so large degrees do not overflow.
    """
    if not isinstance(idx, JacobiIndex):
        idx = JacobiIndex(*idx)
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    mu, nu = idx.mu, idx.nu
    lg = (
        log_gamma(n + 1.0)
        + log_gamma(n + mu + nu + 1.0)
        - log_gamma(n + mu + 1.0)
        - log_gamma(n + nu + 1.0)
    )
    return math.sqrt(2.0 * n + mu + nu + 1.0) * math.exp(0.5 * lg)


def _terminating_order(p):
    """Degree of termination if p is a non-positive integer, else None."""
    if p <= 0 and abs(p - round(p)) < 1e-12:
        return int(round(-p))
    return None


def gauss_2f1(p, q, r, z, rtol=1e-15, max_terms=200000):
    """Gauss hypergeometric series 2F1(p, q; r; z).

    Terminating series (p or q a non-positive integer) are summed exactly;
    otherwise the power series is used for |z| < 1 with term-ratio stopping
    at relative `rtol`.
    """
    p, q, r, z = float(p), float(q), float(r), float(z)
    np_ = _terminating_order(p)
    nq_ = _terminating_order(q)
    nterm = None
    if np_ is not None and nq_ is not None:
        nterm = min(np_, nq_)
    elif np_ is not None:
        nterm = np_
    elif nq_ is not None:
        nterm = nq_

    if r <= 0 and abs(r - round(r)) < 1e-12:
        # Pole of 1/Gamma(r) unless the numerator terminates first.
        if nterm is None or int(round(-r)) < nterm:
            raise PoleError(f"2F1 lower parameter r={r} is a non-positive integer")

    if nterm is not None:
        total = 1.0
        term = 1.0
        for k in range(nterm):
            term *= (p + k) * (q + k) / ((r + k) * (k + 1.0)) * z
            total += term
        return total

    if abs(z) >= 1.0:
        raise DomainError(f"non-terminating 2F1 series requires |z| < 1, got z={z}")

    total = 1.0
    term = 1.0
    comp = 0.0  # Kahan compensation
    for k in range(max_terms):
        term *= (p + k) * (q + k) / ((r + k) * (k + 1.0)) * z
        yk = term - comp
        t = total + yk
        comp = (t - total) - yk
        total = t
        if abs(term) <= rtol * abs(total):
            return total
    raise DomainError(f"2F1 series did not converge for z={z}")


def complete_beta(alpha, beta):
    """B(alpha, beta) = Gamma(alpha) Gamma(beta) / Gamma(alpha+beta)."""
    if alpha <= 0 or beta <= 0:
        raise DomainError(f"complete beta requires positive arguments, got ({alpha}, {beta})")
    return math.exp(log_gamma(alpha) + log_gamma(beta) - log_gamma(alpha + beta))


def incomplete_beta_lower(y, alpha, beta):
    """Lower incomplete beta B(y; alpha, beta) = int_0^y t^(a-1) (1-t)^(b-1) dt.

    Computed as (y^alpha / alpha) 2F1(alpha, 1-beta; 1+alpha; y); for y > 1/2
    the reflection B(y;a,b) = B(a,b) - B(1-y;b,a) is applied so the internal
    series argument stays small.
    """
    y, alpha, beta = float(y), float(alpha), float(beta)
    if alpha <= 0 or beta <= 0:
        raise DomainError(
            f"incomplete beta requires alpha > 0 and beta > 0, got ({alpha}, {beta})"
        )
    if not (0.0 <= y <= 1.0):
        raise DomainError(f"incomplete beta argument must lie in [0, 1], got {y}")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return complete_beta(alpha, beta)
    if y > 0.5:
        return complete_beta(alpha, beta) - incomplete_beta_lower(1.0 - y, beta, alpha)
    return (y**alpha / alpha) * gauss_2f1(alpha, 1.0 - beta, 1.0 + alpha, y)
