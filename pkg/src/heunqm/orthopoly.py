"""Three-term recursion engine.

The per-class coefficient recursions, the four-parameter hypergeometric
family with its deformed variant, the open-problem family defined only by
its recursion, truncated Jacobi matrices and the numeric extraction of
stable discrete spectrum points.

All recursions are handled in one "eigenvalue arrangement":

    arg^power * w_n * p_n = a_n p_n + b_{n-1} p_{n-1} + b_n p_{n+1}

with p_0 = 1 and p_{-1} = 0, where `arg` is the polynomial argument.  The
weight sequence w_n is identically one except for the families whose
argument enters through a resolvent-like diagonal term.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BreakdownError, DomainError, InadmissibleError
from .heun import SolutionClass
from .specfun import log_gamma, log_gamma_complex

__all__ = [
    "ClassRecursionCoeffs",
    "class_recursion_coeffs",
    "class_recursion_rows",
    "eval_class_polynomial",
    "class_polynomial_sequence",
    "WilsonFamily",
    "RacahHeunFamily",
    "VPolyFamily",
    "ClassFamily",
    "wilson_eval",
    "wilson_sequence",
    "wilson_from_hypergeometric",
    "racah_heun_eval",
    "v_poly_eval",
    "v_poly_sequence",
    "wilson_weight",
    "wilson_asymptotics",
    "wilson_discrete_spectrum",
    "JacobiMatrix",
    "jacobi_matrix",
    "numeric_discrete_spectrum",
    "identity_14_residual",
    "GROWTH_LIMIT",
]

GROWTH_LIMIT = 1e8


# ----------------------------------------------------------------------
# class recursion coefficients
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ClassRecursionCoeffs:
    """R, its shifted variant, and the S/T/F/G sequences up to n_max."""

    R: float
    R_tilde: float
    S: np.ndarray
    T: np.ndarray
    F: np.ndarray
    G: np.ndarray
    n_max: int


def class_recursion_coeffs(cls, p, basis, n_max):
    """Coefficient tables for the class recursions.

    Raises a DomainError when `2n + mu + nu` puts a zero in an F/G
    denominator; for admissible indices (mu, nu > -1) the only candidate is
    n = 0, where the zero cancels exactly against the numerator.
    """
    mu, nu = basis.mu, basis.nu
    a, b, c, d = p.a, p.b, p.c, p.d
    n = np.arange(n_max + 1, dtype=float)
    abc1 = a + b + c - 1.0
    S = (n + 0.5 * (mu + nu) + 1.0) ** 2 - 0.25 * abc1**2
    T = (n + 0.5 * (mu + nu + 1.0)) ** 2 - 0.25 * abc1**2
    F, G = _fg_arrays(mu, nu, n_max)
    return ClassRecursionCoeffs(
        R=_r_value(p), R_tilde=_r_value(p) - p.A / d + 0.25 * (1.0 - a) ** 2,
        S=S, T=T, F=F, G=G, n_max=n_max,
    )


def _r_value(p):
    a, b, c, d = p.a, p.b, p.c, p.d
    bracket = d * (a + b + c - 2.0) - a - 0.5 * c + 1.0
    return math.fsum(
        [p.E, -p.B / (d - 1.0), -p.D * d, -0.25 * (1.0 - a) ** 2, 0.5 * c * bracket]
    )


def class_recursion_rows(cls, coeffs, p, basis, nmax=None):
    """(power, w, a, b) arrays of the eigenvalue arrangement for one class.

    `power` is the exponent with which the argument enters (2 when the
    recursion is in the squared argument, 1 otherwise); b[n] couples rows n
    and n+1.
    """
    if nmax is None:
        nmax = coeffs.n_max
    if nmax > coeffs.n_max:
        raise DomainError(f"coefficients available up to n={coeffs.n_max}, need {nmax}")
    sl = slice(0, nmax + 1)
    S, T, F, G = coeffs.S[sl], coeffs.T[sl], coeffs.F[sl], coeffs.G[sl]
    mu, nu, d = basis.mu, basis.nu, p.d
    n = np.arange(nmax + 1, dtype=float)
    if cls is SolutionClass.GENERAL:
        diag = (
            -_n_ratio(n, mu, mu + nu)
            + d * (n + 0.5 * (mu + nu + 1.0))
            + 0.5 * (F + 1.0 - 2.0 * d) * (S + p.D)
            - 0.25 * (nu + 1.0) ** 2
        )
        return 2, np.ones(nmax + 1), diag, G * (S + p.D)
    if cls is SolutionClass.SPECIAL:
        sinh_th = 2.0 * math.sqrt(d * (d - 1.0))
        cosh_th = 2.0 * d - 1.0
        tden = T + p.D
        w = np.where(np.abs(tden) > 0.0, sinh_th / np.where(tden == 0.0, 1.0, tden), np.inf)
        return 1, w, cosh_th - F, -2.0 * G
    if cls is SolutionClass.RESTRICTED_FIRST:
        diag = -(
            _n_ratio(n, nu, mu + nu)
            + 0.5 * (F - 1.0) * S
            + 0.25 * (mu + 1.0) ** 2
        )
        return 2, np.ones(nmax + 1), diag, -G * S
    raise DomainError(f"no coefficient recursion for class {cls.value}")


def _n_ratio(n, shift, index_sum):
    """n (n + shift) / (2n + index_sum) with the vanishing n = 0 term exact."""
    out = np.zeros_like(n)
    out[1:] = n[1:] * (n[1:] + shift) / (2.0 * n[1:] + index_sum)
    return out


def _forward_sequence(zp, w, a, b, nmax):
    """Run the eigenvalue arrangement forward.  Returns (values, grew)."""
    p = np.zeros(nmax + 1)
    p[0] = 1.0
    grew = False
    prev, cur = 0.0, 1.0
    for n in range(nmax):
        lead = b[n]
        if abs(lead) < 1e-280:
            raise BreakdownError(f"vanishing leading recursion coefficient at n={n}")
        if not math.isfinite(w[n]) or not math.isfinite(a[n]):
            raise BreakdownError(f"singular recursion coefficient at n={n}")
        nxt = ((zp * w[n] - a[n]) * cur - (b[n - 1] if n > 0 else 0.0) * prev) / lead
        if abs(nxt) > GROWTH_LIMIT * max(abs(cur), 1e-300):
            grew = True
        p[n + 1] = nxt
        prev, cur = cur, nxt
    return p, grew


def class_polynomial_sequence(cls, coeffs, p, basis, nmax, z_argument):
    """Values p_0 .. p_nmax of the class polynomial at one argument.

    The argument is z^2 for the classes whose recursion is quadratic in the
    argument and z itself for the remaining one (see `class_recursion_rows`).
    """
    power, w, a, b = class_recursion_rows(cls, coeffs, p, basis, nmax)
    if cls is SolutionClass.SPECIAL and np.any(~np.isfinite(w[:nmax])):
        k = int(np.argmin(np.isfinite(w[:nmax])))
        raise BreakdownError(f"resonant denominator in the recursion at n={k}")
    return _forward_sequence(z_argument, w, a, b, nmax)


def eval_class_polynomial(cls, coeffs, p, basis, n, z_argument):
    """Forward three-term recursion value p_n at the given argument."""
    if n == 0:
        return 1.0
    seq, _ = class_polynomial_sequence(cls, coeffs, p, basis, n, z_argument)
    return float(seq[n])


# ----------------------------------------------------------------------
# hypergeometric four-parameter family and its deformation
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class WilsonFamily:
    """Four-parameter family; non-real parameters must come in a conjugate pair."""

    a: complex
    b: complex
    c: complex
    d: complex

    def params(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class RacahHeunFamily:
    """Deformed four-parameter family, defined by its modified recursion."""

    kappa: float
    a: complex
    b: complex
    c: complex
    d: complex

    def params(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class VPolyFamily:
    """Recursion-defined family with hyperbolic deformation angle theta >= 0.

    tau enters every coefficient through tau^2 only, so an imaginary tau is
    encoded as tau_squared < 0 and needs no complex arithmetic.
    """

    mu: float
    nu: float
    tau_squared: float
    theta: float

    def __post_init__(self):
        if self.theta < 0.0:
            raise InadmissibleError(f"theta must be >= 0, got {self.theta}")


@dataclass(frozen=True)
class ClassFamily:
    """A class recursion viewed as a polynomial family."""

    cls: SolutionClass
    heun: object
    basis: object


def _real_guard(value, what):
    if isinstance(value, complex):
        if abs(value.imag) > 1e-9 * max(1.0, abs(value)):
            raise InadmissibleError(f"{what} is not real: {value}")
        return value.real
    return float(value)


def _wilson_arrays(nmax, a, b, c, d, kappa=0.0):
    """(diag, off) of the recursion for the four-parameter family.

    off[n] is the positive coefficient coupling orders n and n+1; the
    eigenvalue arrangement uses -off.  Complex conjugate parameter pairs are
    admitted; the assembled coefficients must come out real.
    """
    S = a + b + c + d
    diag = np.zeros(nmax + 2)
    off = np.zeros(nmax + 2)
    for n in range(nmax + 2):
        if n == 0:
            piece2 = 0.0
        else:
            piece2 = (
                n
                * (n + b + c - 1.0)
                * (n + b + d - 1.0)
                * (n + c + d - 1.0)
                / ((2.0 * n + S - 1.0) * (2.0 * n + S - 2.0))
            )
        den1 = (2.0 * n + S) * (2.0 * n + S - 1.0)
        num1 = (n + a + b) * (n + a + c) * (n + a + d) * (n + S - 1.0)
        if n == 0 and abs(S - 1.0) < 1e-12:
            piece1 = (a + b) * (a + c) * (a + d) / S
        else:
            piece1 = num1 / den1
        an = piece1 + piece2 - a * a
        if kappa != 0.0:
            an = an - kappa * ((n + a + c) * (n + b + d) - 0.5 * (2.0 * n + S - 1.0))
        diag[n] = _real_guard(an, f"recursion diagonal at n={n}")

        rad = (
            (n + 1.0)
            * (n + a + b)
            * (n + c + d)
            * (n + a + c)
            * (n + a + d)
            * (n + b + c)
            * (n + b + d)
            * (n + S - 1.0)
            / ((2.0 * n + S - 1.0) * (2.0 * n + S + 1.0))
        )
        if n == 0 and abs(S - 1.0) < 1e-12:
            rad = (
                (a + b) * (c + d) * (a + c) * (a + d) * (b + c) * (b + d) / (S + 1.0)
            )
        rad = _real_guard(rad, f"recursion radicand at n={n}")
        if rad < 0.0:
            if rad > -1e-13 * max(1.0, abs(n + 1.0) ** 8):
                rad = 0.0
            else:
                raise InadmissibleError(f"negative radicand in recursion coefficient at n={n}")
        bs = _real_guard(2.0 * n + S, "recursion scale")
        off[n] = math.sqrt(rad) / bs
    return diag, off


def wilson_sequence(nmax, z_squared, a, b, c, d, kappa=0.0):
    """Values W_0 .. W_nmax at one squared argument.  Returns (values, grew)."""
    diag, off = _wilson_arrays(nmax, a, b, c, d, kappa=kappa)
    return _forward_sequence(float(z_squared), np.ones(nmax + 1), diag[: nmax + 1], -off[: nmax + 1], nmax)


def wilson_eval(n, z_squared, a, b, c, d):
    """Recursion value of the four-parameter polynomial at z^2."""
    if n == 0:
        return 1.0
    seq, _ = wilson_sequence(n, z_squared, a, b, c, d)
    return float(seq[n])


def racah_heun_eval(n, z_squared, kappa, a, b, c, d):
    """Deformed-recursion value; kappa = 0 reproduces `wilson_eval` exactly."""
    if n == 0:
        return 1.0
    diag, off = _wilson_arrays(n, a, b, c, d, kappa=kappa)
    seq, _ = _forward_sequence(
        float(z_squared), np.ones(n + 1), diag[: n + 1], -off[: n + 1], n
    )
    return float(seq[n])


def wilson_from_hypergeometric(n, z_squared, a, b, c, d):
    """Terminating hypergeometric-sum evaluation (the oracle path).

    Real parameters only; the recursion is the primary evaluation route.
    The sum alternates and cancels badly in floating point, so it is carried
    out in exact rational arithmetic (float inputs are exact rationals) with
    a single square root taken at the end.
    """
    from fractions import Fraction

    for v in (a, b, c, d):
        if isinstance(v, complex):
            raise InadmissibleError("hypergeometric route supports real parameters only")
    a, b, c, d = (Fraction(float(v)) for v in (a, b, c, d))
    z2 = Fraction(float(z_squared))
    S = a + b + c + d
    num = Fraction(2 * n) + S - 1
    den = Fraction(n) + S - 1
    for k in range(n):
        num *= (a + b + k) * (a + c + k) * (a + d + k) * (S + k)
        den *= (b + c + k) * (b + d + k) * (c + d + k) * (k + 1)
    rad = num / den
    if rad < 0:
        raise InadmissibleError(f"negative prefactor radicand for n={n}")
    total = Fraction(1)
    term = Fraction(1)
    for k in range(n):
        term *= (
            Fraction(-n + k)
            * (n + S - 1 + k)
            * ((a + k) ** 2 + z2)
            / ((a + b + k) * (a + c + k) * (a + d + k) * (k + 1))
        )
        total += term
    sign = -1.0 if total < 0 else 1.0
    return sign * math.sqrt(float(rad * total * total))


def v_poly_sequence(nmax, z, mu, nu, tau_squared, theta):
    """Values V_0 .. V_nmax of the recursion-defined family.  (values, grew)."""
    fam = VPolyFamily(mu=mu, nu=nu, tau_squared=tau_squared, theta=theta)
    w, a, b = _vpoly_rows(fam, nmax)
    if np.any(~np.isfinite(w[:nmax])):
        k = int(np.argmin(np.isfinite(w[:nmax])))
        raise BreakdownError(f"resonant denominator at n={k}: (n+(mu+nu+1)/2)^2 = tau^2")
    return _forward_sequence(float(z), w, a, b, nmax)


def v_poly_eval(n, z, mu, nu, tau_squared, theta):
    """Forward recursion value V_n(z) from V_0 = 1."""
    if n == 0:
        return 1.0
    seq, _ = v_poly_sequence(n, z, mu, nu, tau_squared, theta)
    return float(seq[n])


def _fg_arrays(mu, nu, nmax):
    n = np.arange(nmax + 1, dtype=float)
    s = 2.0 * n + mu + nu
    if np.any(np.abs(s[1:]) < 1e-12) or np.any(np.abs(s + 2.0) < 1e-12) or np.any(
        np.abs(s + 1.0) < 1e-12
    ) or np.any(np.abs(s + 3.0) < 1e-12):
        raise DomainError("degenerate parameters: 2n + mu + nu hits a denominator zero")
    F = np.empty(nmax + 1)
    # at n = 0 the (mu + nu) denominator factor cancels exactly
    F[0] = (nu - mu) / (mu + nu + 2.0)
    F[1:] = (nu**2 - mu**2) / (s[1:] * (s[1:] + 2.0))
    G = (1.0 / (s + 2.0)) * np.sqrt(
        (n + 1.0)
        * (n + mu + 1.0)
        * (n + nu + 1.0)
        * (n + mu + nu + 1.0)
        / ((s + 1.0) * (s + 3.0))
    )
    return F, G


def _vpoly_rows(fam, nmax):
    F, G = _fg_arrays(fam.mu, fam.nu, nmax)
    n = np.arange(nmax + 1, dtype=float)
    tden = (n + 0.5 * (fam.mu + fam.nu + 1.0)) ** 2 - fam.tau_squared
    with np.errstate(divide="ignore"):
        w = np.where(tden != 0.0, math.sinh(fam.theta) / np.where(tden == 0.0, 1.0, tden), np.inf)
    return w, math.cosh(fam.theta) - F, -2.0 * G


# ----------------------------------------------------------------------
# weight, asymptotics and spectrum of the four-parameter family
# ----------------------------------------------------------------------


def _log_abs_gamma(v):
    if isinstance(v, complex) and v.imag != 0.0:
        return log_gamma_complex(v)[0]
    return log_gamma(float(v.real if isinstance(v, complex) else v))


def wilson_weight(z, a, b, c, d):
    """Normalized continuous weight at z > 0 (continuous-regime parameters)."""
    if z <= 0.0:
        raise DomainError(f"weight defined for z > 0, got z={z}")
    params = (a, b, c, d)
    S = sum(params)
    pair_sum = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            pair_sum += _log_abs_gamma(params[i] + params[j])
    log_rho = -math.log(2.0 * math.pi) + _log_abs_gamma(S) - pair_sum
    top = 0.0
    for v in params:
        top += log_gamma_complex(complex(v) + 1j * z)[0]
    top -= log_gamma_complex(2j * z)[0]
    return math.exp(log_rho + 2.0 * top)


def wilson_asymptotics(z, a, b, c, d):
    """(amplitude, phase) of the large-degree oscillation at real z > 0."""
    if z <= 0.0:
        raise DomainError(f"asymptotics defined for z > 0, got z={z}")
    rho = wilson_weight(z, a, b, c, d)
    amp = 2.0 / math.sqrt(math.pi * rho)
    phase = log_gamma_complex(2j * z)[1]
    for v in (a, b, c, d):
        phase -= log_gamma_complex(complex(v) + 1j * z)[1]
    return amp, phase


def wilson_discrete_spectrum(a, b, c, d):
    """Discrete points z_k^2 = -(k+a)^2, k = 0 .. floor(-a), for a < 0.

    Requires a+b, a+c, a+d positive (a pair of them may instead be complex
    conjugates with positive real parts).  Returns [] when a >= 0.
    """
    if isinstance(a, complex):
        raise InadmissibleError("the spectrum-generating parameter must be real")
    if a >= 0.0:
        return []
    sums = [a + b, a + c, a + d]
    for s in sums:
        if isinstance(s, complex):
            if s.real <= 0.0:
                raise InadmissibleError(f"parameter sum {s} must have positive real part")
        elif s <= 0.0:
            raise InadmissibleError(f"parameter sum {s} must be positive")
    n_top = math.floor(-a)
    return [-((k + a) ** 2) for k in range(int(n_top) + 1)]


# ----------------------------------------------------------------------
# Jacobi matrices and numeric spectra
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal truncation of a recursion operator."""

    order: int
    diag: np.ndarray
    off: np.ndarray


def _family_rows(family, m):
    """(power, w, a, b) arrays for rows 0 .. m-1 of any supported family."""
    if isinstance(family, ClassFamily):
        coeffs = class_recursion_coeffs(family.cls, family.heun, family.basis, m + 1)
        return class_recursion_rows(family.cls, coeffs, family.heun, family.basis, m)
    if isinstance(family, WilsonFamily):
        diag, off = _wilson_arrays(m, *family.params())
        return 2, np.ones(m + 1), diag[: m + 1], -off[: m + 1]
    if isinstance(family, RacahHeunFamily):
        diag, off = _wilson_arrays(m, *family.params(), kappa=family.kappa)
        return 2, np.ones(m + 1), diag[: m + 1], -off[: m + 1]
    if isinstance(family, VPolyFamily):
        w, a, b = _vpoly_rows(family, m)
        return 1, w, a, b
    raise DomainError(f"unsupported family {type(family).__name__}")


def jacobi_matrix(family, m):
    """Order-m symmetric tridiagonal matrix whose eigenvalues approximate
    the support of the family's orthogonality measure.

    Families whose argument enters through a weighted diagonal are
    symmetrized with the weight; this requires the weights to keep one sign
    over the truncation (otherwise use `numeric_discrete_spectrum`, which
    falls back to the generalized form).
    """
    power, w, a, b = _family_rows(family, m)
    w = np.asarray(w[:m], dtype=float)
    a = np.asarray(a[:m], dtype=float)
    b = np.asarray(b[: m - 1], dtype=float)
    if np.any(np.abs(b) < 1e-300):
        raise InadmissibleError("recursion chain decouples: vanishing off-diagonal entry")
    if np.all(w == 1.0):
        return JacobiMatrix(order=m, diag=a.copy(), off=np.abs(b))
    if np.any(w <= 0.0) or np.any(~np.isfinite(w)):
        raise InadmissibleError(
            "indefinite weight sequence: symmetric truncation unavailable"
        )
    d = a / w
    e = np.abs(b) / np.sqrt(w[:-1] * w[1:])
    return JacobiMatrix(order=m, diag=d, off=e)


def _family_eigs(family, m):
    """Real eigenvalues of the order-m truncation and the tail weight of
    each eigenvector (generalized nonsymmetric form when the weights are
    indefinite)."""
    power, w, a, b = _family_rows(family, m)
    w = np.asarray(w[:m], dtype=float)
    a = np.asarray(a[:m], dtype=float)
    b = np.asarray(b[: m - 1], dtype=float)
    cut = m - m // 4
    if np.all(w > 0.0) and np.all(np.isfinite(w)):
        d = a / w
        e = np.abs(b) / np.sqrt(w[:-1] * w[1:])
        vals, vecs = scipy.linalg.eigh_tridiagonal(d, e)
        tails = np.sum(vecs[cut:, :] ** 2, axis=0) / np.sum(vecs**2, axis=0)
        order = np.argsort(vals)
        return vals[order], tails[order]
    if np.any(~np.isfinite(w)) or np.any(w == 0.0):
        raise InadmissibleError("resonant weight inside the truncation window")
    # indefinite weights: solve the real nonsymmetric scaled problem densely
    mtx = np.diag(a / w)
    idx = np.arange(m - 1)
    mtx[idx, idx + 1] = b / w[:-1]
    mtx[idx + 1, idx] = b / w[1:]
    vals, vecs = np.linalg.eig(mtx)
    scale = max(1.0, np.max(np.abs(vals)))
    keep = np.abs(vals.imag) < 1e-8 * scale
    vals = vals[keep].real
    vecs = np.abs(vecs[:, keep])
    tails = np.sum(vecs[cut:, :] ** 2, axis=0) / np.sum(vecs**2, axis=0)
    order = np.argsort(vals)
    return vals[order], tails[order]


def numeric_discrete_spectrum(family, m, stability_tol=None, tail_tol=1e-4):
    """Eigenvalues stable between truncation orders m and 2m.

    An eigenvalue of the order-m matrix is accepted when the order-2m
    spectrum contains a partner within max(1e-6, 1e-3 * gap), where gap is
    the distance to its nearest neighbour at order m.  Discretized-continuum
    eigenvalues drift with the order and are rejected.  A localization
    filter (eigenvector weight beyond three quarters of the window below
    `tail_tol`) removes continuum artifacts that survive the doubling by
    refinement commensurability.
    """
    lo, lo_tails = _family_eigs(family, m)
    hi, _ = _family_eigs(family, 2 * m)
    if lo.size == 0 or hi.size == 0:
        return []
    stable = []
    for i, lam in enumerate(lo):
        if lo_tails[i] > tail_tol:
            continue
        others = np.delete(lo, i)
        gap = np.min(np.abs(others - lam)) if others.size else np.inf
        tol = stability_tol if stability_tol is not None else max(1e-6, 1e-3 * gap)
        if np.min(np.abs(hi - lam)) <= tol:
            stable.append(float(lam))
    return stable


# ----------------------------------------------------------------------
# the matching identity
# ----------------------------------------------------------------------


def identity_14_residual(n, mu, nu, D, abc_sum):
    """|LHS - RHS| of the contiguous-coefficient identity used in the
    class-to-family matching, evaluated at integer degree n."""
    s = 2.0 * n + mu + nu
    if abs(s) < 1e-12 or abs(s + 1.0) < 1e-12 or abs(s + 2.0) < 1e-12:
        raise DomainError("denominator vanishes in the identity")
    half = 0.25 * (abc_sum - 1.0) ** 2

    def S_at(k):
        return (k + 0.5 * (mu + nu) + 1.0) ** 2 - half

    F = (nu**2 - mu**2) / (s * (s + 2.0))
    lhs = (n + nu + 1.0) * (n + mu + nu + 1.0) * (S_at(n) + D) / ((s + 1.0) * (s + 2.0))
    lhs += n * (n + mu) * (S_at(n - 1.0) + D) / (s * (s + 1.0))
    rhs = -n * (n + mu) / s + 0.5 * (1.0 + F) * (S_at(n) + D)
    return abs(lhs - rhs)
