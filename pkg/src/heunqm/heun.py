"""Data model of the nine-parameter equation.

Parameter normalization (rescaling the third finite singular point to lie
beyond [0, 1]), classification into the four solution classes, derivation of
the square-integrable basis parameters, and the three auxiliary constants
that enter the potential and recursion formulas.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ConstraintError, DomainError
from .specfun import JacobiIndex

__all__ = [
    "HeunParams",
    "SolutionClass",
    "BasisParams",
    "AuxConstants",
    "Classification",
    "normalize_d",
    "classify",
    "aux_constants",
    "basis_params",
    "basis_param_branches",
]

_D_GUARD = 1e-12


@dataclass(frozen=True)
class HeunParams:
    """The nine real parameters {a, b, c, d, A, B, C, D, E}; d > 0 and d != 1."""

    a: float
    b: float
    c: float
    d: float
    A: float
    B: float
    C: float
    D: float
    E: float

    def __post_init__(self):
        if not (self.d > 0.0) or abs(self.d - 1.0) <= _D_GUARD:
            raise DomainError(f"parameter d must be positive and != 1, got d={self.d}")


class SolutionClass(Enum):
    GENERAL = "general"
    SPECIAL = "special"
    RESTRICTED_FIRST = "restricted-first"
    RESTRICTED_SECOND = "restricted-second"


@dataclass(frozen=True)
class BasisParams:
    """Exponents (alpha, beta, gamma) and Jacobi indices (mu, nu) of the basis."""

    alpha: float
    beta: float
    gamma: float
    mu: float
    nu: float

    def jacobi_index(self):
        return JacobiIndex(self.mu, self.nu)


@dataclass(frozen=True)
class AuxConstants:
    C_tilde: float
    D_tilde: float
    E_tilde: float


@dataclass(frozen=True)
class Classification:
    classes: frozenset
    original_heun: bool

    def __contains__(self, cls):
        return cls in self.classes


def normalize_d(p):
    """Return an equivalent parameter set with d > 1.

    For d > 1 this is the identity.  For d < 1 the variable is rescaled by d,
    which maps the parameters to {d'=1/d, a'=a, b'=c, c'=b, A'=A/d^2,
    B'=C/d^2, C'=B/d^2, D'=D, E'=E/d}; solutions of the original equation are
    then the normalized-form solutions evaluated at y/d.
    """
    if not (p.d > 0.0) or abs(p.d - 1.0) <= _D_GUARD:
        raise DomainError(f"cannot normalize d={p.d}")
    if p.d > 1.0:
        return p
    d = p.d
    return HeunParams(
        a=p.a,
        b=p.c,
        c=p.b,
        d=1.0 / d,
        A=p.A / d**2,
        B=p.C / d**2,
        C=p.B / d**2,
        D=p.D,
        E=p.E / d,
    )


def aux_constants(p):
    """The three constants built from (a, b, c, d) that recur in the potential."""
    c, d, a, b = p.c, p.d, p.a, p.b
    return AuxConstants(
        C_tilde=-0.25 * c * d * (c - 2.0) * (d - 1.0),
        D_tilde=0.25 * c * (2.0 * a + 2.0 * b + c - 2.0),
        E_tilde=0.25 * c * ((c - 2.0) * (d - 1.0) - 2.0 * a),
    )


def restricted_e_value(p):
    """The value E must take for the restricted classes, given the other parameters."""
    a, b, c, d = p.a, p.b, p.c, p.d
    bracket = d * (a + b + c - 2.0) - a - 0.5 * c + 1.0
    return p.A / d + p.B / (d - 1.0) - 0.5 * c * bracket


def _close(x, y, tol):
    return abs(x - y) <= max(1e-12, tol * max(abs(x), abs(y)))


def classify(p, tol=1e-9):
    """Classes whose constraints the (normalized, d > 1) parameters satisfy.

    All classes share the two inequalities 4A/d <= (1-a)^2 and
    4B/(d-1) >= -(1-b)^2.  The equality on C selects general versus
    special; the restricted classes additionally need D = 0 and a pinned E.
    Also reports whether A = B = C = 0, the specialization that reduces the
    equation to the classical four-singularity form.
    """
    if p.d <= 1.0:
        raise DomainError(f"classify requires normalized parameters with d > 1, got d={p.d}")
    classes = set()
    one_a = (1.0 - p.a) ** 2
    one_b = (1.0 - p.b) ** 2
    one_c = (1.0 - p.c) ** 2
    ineq = (4.0 * p.A / p.d <= one_a + 1e-12) and (
        4.0 * p.B / (p.d - 1.0) >= -one_b - 1e-12
    )
    if ineq:
        c_ratio = 4.0 * p.C / (p.d * (p.d - 1.0))
        if _close(c_ratio, one_c, tol):
            classes.add(SolutionClass.GENERAL)
        if _close(c_ratio, one_c - 1.0, tol):
            classes.add(SolutionClass.SPECIAL)
            if _close(p.D, 0.0, tol) and _close(p.E, restricted_e_value(p), tol):
                classes.add(SolutionClass.RESTRICTED_FIRST)
                classes.add(SolutionClass.RESTRICTED_SECOND)
    flag = _close(p.A, 0.0, tol) and _close(p.B, 0.0, tol) and _close(p.C, 0.0, tol)
    return Classification(classes=frozenset(classes), original_heun=flag)


def _root_or_error(square, label):
    if square < 0.0:
        if square > -1e-13:
            square = 0.0
        else:
            raise ConstraintError(f"negative discriminant for {label}: {square}")
    return math.sqrt(square)


def basis_params(p, cls, branch=(1, 1)):
    """Basis parameters for one class and one choice of root branches.

    `branch` holds the signs applied to the square roots that produce nu and
    mu.  Branches leading to indices <= -1 are rejected; use
    `basis_param_branches` to enumerate every admissible combination.
    """
    s_nu, s_mu = branch
    if s_nu not in (-1, 1) or s_mu not in (-1, 1):
        raise DomainError(f"branch signs must be +/-1, got {branch}")
    a, b, c, d = p.a, p.b, p.c, p.d
    nu_sq = (1.0 - a) ** 2 - 4.0 * p.A / d
    mu_sq = (1.0 - b) ** 2 + 4.0 * p.B / (d - 1.0)
    r_nu = _root_or_error(nu_sq, "nu")
    r_mu = _root_or_error(mu_sq, "mu")

    if cls is SolutionClass.RESTRICTED_SECOND:
        nu = -1.0 + s_nu * r_nu
    else:
        nu = s_nu * r_nu
    if cls is SolutionClass.RESTRICTED_FIRST:
        mu = -1.0 + s_mu * r_mu
    else:
        mu = s_mu * r_mu
    if nu <= -1.0 or mu <= -1.0:
        raise ConstraintError(
            f"branch {branch} gives inadmissible indices mu={mu}, nu={nu} for {cls.value}"
        )

    if cls is SolutionClass.GENERAL:
        gamma = 0.5 * (1.0 - c)
    else:
        gamma = -0.5 * c
    if cls is SolutionClass.RESTRICTED_SECOND:
        alpha = 0.5 * (nu + 2.0 - a)
    else:
        alpha = 0.5 * (nu + 1.0 - a)
    if cls is SolutionClass.RESTRICTED_FIRST:
        beta = 0.5 * (mu + 2.0 - b)
    else:
        beta = 0.5 * (mu + 1.0 - b)
    return BasisParams(alpha=alpha, beta=beta, gamma=gamma, mu=mu, nu=nu)


def basis_param_branches(p, cls):
    """Every admissible branch of basis parameters, default branch first."""
    out = []
    for s_nu in (1, -1):
        for s_mu in (1, -1):
            try:
                bp = basis_params(p, cls, (s_nu, s_mu))
            except ConstraintError:
                continue
            if not any(_same_basis(bp, other) for other in out):
                out.append(bp)
    if not out:
        raise ConstraintError(f"no admissible basis branch for class {cls.value}")
    return out


def _same_basis(x, y, tol=1e-14):
    return abs(x.mu - y.mu) <= tol and abs(x.nu - y.nu) <= tol
