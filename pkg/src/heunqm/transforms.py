"""The six closed-form coordinate maps y(x) <-> x(y) and their derivative.

Each case is labelled by its exponent pair (a, b); x is always quoted in
units of 1/lambda internally (the dimensionless combination lambda*x), with
the public functions taking physical x and the scale lambda.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "CoordinateCase",
    "CASES",
    "case_by_name",
    "case_for_ab",
    "y_of_x",
    "y_pair",
    "x_of_y",
    "dy_dx",
]

_CLAMP = 1e-15


@dataclass(frozen=True)
class CoordinateCase:
    """One row of the admissible (a, b) choices.

    `xi_lo`/`xi_hi` bound the dimensionless coordinate lambda*x; infinite
    endpoints mark half-line and full-line domains.
    """

    name: str
    a: float
    b: float
    xi_lo: float
    xi_hi: float
    zero_energy_only: bool

    @property
    def ab(self):
        return (self.a, self.b)

    def contains_xi(self, xi):
        return (xi >= self.xi_lo - 1e-12) & (xi <= self.xi_hi + 1e-12)


CASES = {
    "half-half": CoordinateCase("half-half", 0.5, 0.5, -0.5 * math.pi, 0.5 * math.pi, False),
    "half-one": CoordinateCase("half-one", 0.5, 1.0, 0.0, math.inf, False),
    "one-one": CoordinateCase("one-one", 1.0, 1.0, -math.inf, math.inf, False),
    "zero-one": CoordinateCase("zero-one", 0.0, 1.0, 0.0, math.inf, False),
    "half-threehalf": CoordinateCase("half-threehalf", 0.5, 1.5, 0.0, math.inf, True),
    "zero-threehalf": CoordinateCase("zero-threehalf", 0.0, 1.5, 2.0, math.inf, True),
}


def case_by_name(name):
    try:
        return CASES[name]
    except KeyError:
        raise DomainError(f"unknown coordinate case {name!r}; choose from {sorted(CASES)}")


def case_for_ab(a, b):
    for case in CASES.values():
        if abs(case.a - a) < 1e-12 and abs(case.b - b) < 1e-12:
            return case
    raise DomainError(f"(a, b) = ({a}, {b}) is not one of the six admissible pairs")


def _check_domain(case, xi):
    if not np.all(case.contains_xi(np.asarray(xi))):
        raise DomainError(
            f"x outside the domain of case {case.name}: lambda*x must lie in "
            f"[{case.xi_lo}, {case.xi_hi}]"
        )


def y_pair(case, lam, x):
    """(y, 1-y) at physical coordinate x, both to full relative precision.

    Near the endpoints the small one of the pair underflows gracefully
    instead of cancelling, which matters wherever a power of (1-y) or y
    multiplies a second difference.
    """
    if lam <= 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    x = np.asarray(x, dtype=float)
    xi = lam * x
    _check_domain(case, xi)
    if case.name == "half-half":
        t = 0.5 * xi + 0.25 * math.pi
        y = np.sin(t) ** 2
        omy = np.cos(t) ** 2
    elif case.name == "half-one":
        y = np.tanh(0.5 * xi) ** 2
        omy = 1.0 / np.cosh(0.5 * xi) ** 2
    elif case.name == "one-one":
        y = 1.0 / (1.0 + np.exp(-xi))
        omy = 1.0 / (1.0 + np.exp(xi))
    elif case.name == "zero-one":
        y = -np.expm1(-xi)
        omy = np.exp(-xi)
    elif case.name == "half-threehalf":
        t2 = (0.5 * xi) ** 2
        y = t2 / (t2 + 1.0)
        omy = 1.0 / (t2 + 1.0)
    else:  # zero-threehalf
        t = 0.5 * xi
        with np.errstate(divide="ignore"):
            y = (t - 1.0) * (t + 1.0) / t**2
            omy = 1.0 / t**2
    y = np.clip(y, 0.0, 1.0)
    omy = np.clip(omy, 0.0, 1.0)
    if y.shape:
        return y, omy
    return float(y), float(omy)


def y_of_x(case, lam, x):
    """Map physical coordinate x to y in [0, 1] for the given case."""
    return y_pair(case, lam, x)[0]


def x_of_y(case, lam, y):
    """Inverse map.  Endpoints whose preimage is infinite return +/-inf.

    Integration constants are fixed per case so the inverse matches the
    forward conventions: half-half is offset by -pi/2 relative to the bare
    antiderivative; half-one, zero-one and half-threehalf anchor x = 0 at
    y = 0; zero-threehalf anchors lambda*x = 2 at y = 0; one-one anchors
    x = 0 at y = 1/2.
    """
    if lam <= 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    y = np.asarray(y, dtype=float)
    if np.any(y < -1e-12) or np.any(y > 1.0 + 1e-12):
        raise DomainError("y must lie in [0, 1]")
    yc = np.clip(y, _CLAMP, 1.0 - _CLAMP)
    if case.name == "half-half":
        xi = np.arcsin(2.0 * np.clip(y, 0.0, 1.0) - 1.0)
    elif case.name == "half-one":
        xi = np.where(y <= 0.0, 0.0, 2.0 * np.arctanh(np.sqrt(yc)))
        xi = np.where(y >= 1.0, np.inf, xi)
    elif case.name == "one-one":
        xi = np.log(yc / (1.0 - yc))
        xi = np.where(y <= 0.0, -np.inf, xi)
        xi = np.where(y >= 1.0, np.inf, xi)
    elif case.name == "zero-one":
        xi = -np.log1p(-yc)
        xi = np.where(y <= 0.0, 0.0, xi)
        xi = np.where(y >= 1.0, np.inf, xi)
    elif case.name == "half-threehalf":
        xi = 2.0 * np.sqrt(yc / (1.0 - yc))
        xi = np.where(y <= 0.0, 0.0, xi)
        xi = np.where(y >= 1.0, np.inf, xi)
    else:  # zero-threehalf
        xi = 2.0 / np.sqrt(1.0 - yc)
        xi = np.where(y <= 0.0, 2.0, xi)
        xi = np.where(y >= 1.0, np.inf, xi)
    x = xi / lam
    return x if x.shape else float(x)


def dy_dx(case, lam, y):
    """dy/dx = lambda y^a (1-y)^b, with exact zero limits at the endpoints."""
    if lam <= 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    y = np.asarray(y, dtype=float)
    if np.any(y < -1e-12) or np.any(y > 1.0 + 1e-12):
        raise DomainError("y must lie in [0, 1]")
    yc = np.clip(y, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = lam * np.power(yc, case.a) * np.power(1.0 - yc, case.b)
    # a = 0 keeps a finite derivative at y = 0; numpy already gives 0**0 = 1
    out = np.where(np.isfinite(val), val, 0.0)
    return out if out.shape else float(out)
