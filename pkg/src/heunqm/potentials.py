"""Physical systems: potential-strength inputs to equation parameters and back.

A PhysicalSystem ties one solution class and one coordinate case to a
complete parameter set, the derived basis, and the dimensionless energy
2E/lambda^2.  The potential is always returned in the dimensionless
combination 2V(x)/lambda^2.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConstraintError, DomainError
from .heun import (
    HeunParams,
    SolutionClass,
    aux_constants,
    basis_params,
    classify,
    normalize_d,
    restricted_e_value,
)
from .transforms import CoordinateCase, case_by_name, y_pair

__all__ = [
    "PhysicalSystem",
    "build_system",
    "solve_row_params",
    "strengths_from_heun",
    "system_from_heun",
    "potential_value",
    "energy_param",
    "restricted_x_potential",
    "free_inputs_for",
    "energy_dial_for",
]

# Free inputs each table row expects alongside the strength list, and the
# number of strengths.  The remaining equation parameters are derived.
_ROW_INPUTS = {
    (SolutionClass.GENERAL, "half-half"): (("d", "c", "A", "B", "D"), 1),
    (SolutionClass.GENERAL, "half-one"): (("d", "c", "A", "B"), 2),
    (SolutionClass.GENERAL, "one-one"): (("d", "c", "B"), 3),
    (SolutionClass.GENERAL, "zero-one"): (("d", "c", "A", "B"), 2),
    (SolutionClass.SPECIAL, "half-half"): (("d", "c", "A", "B", "D"), 1),
    (SolutionClass.SPECIAL, "half-one"): (("d", "c", "A", "B"), 2),
    (SolutionClass.SPECIAL, "one-one"): (("d", "c", "B"), 3),
    (SolutionClass.SPECIAL, "zero-one"): (("d", "c", "A", "B"), 2),
    (SolutionClass.RESTRICTED_FIRST, "half-half"): (("d", "c", "A", "B"), 0),
    (SolutionClass.RESTRICTED_FIRST, "half-one"): (("d", "c", "A", "B"), 0),
    (SolutionClass.RESTRICTED_FIRST, "one-one"): (("d", "c", "B"), 1),
    (SolutionClass.RESTRICTED_FIRST, "zero-one"): (("d", "A", "B"), 1),
}

# Which free input plays the role of the energy dial in each row.
_ROW_DIAL = {
    "half-half": "D",
    "half-one": "B",
    "one-one": "B",
    "zero-one": "B",
}


@dataclass(frozen=True)
class PhysicalSystem:
    cls: SolutionClass
    case: CoordinateCase
    lam: float
    u: tuple
    heun: HeunParams
    basis: object
    energy_param: float

    @property
    def zero_energy_only(self):
        return self.case.zero_energy_only


def free_inputs_for(cls, case):
    """(free input names, number of strengths) for one table row."""
    key = (cls, case.name if isinstance(case, CoordinateCase) else case)
    try:
        return _ROW_INPUTS[key]
    except KeyError:
        raise ConstraintError(
            f"no construction row for class {getattr(cls, 'value', cls)} on case {key[1]}"
        )


def energy_dial_for(case):
    """Name of the equation parameter that moves only the energy in this row."""
    name = case.name if isinstance(case, CoordinateCase) else case
    try:
        return _ROW_DIAL[name]
    except KeyError:
        raise DomainError(f"case {name} has no energy parameter")


def _class_c_value(cls, a, b, c, d):
    if cls is SolutionClass.GENERAL:
        return 0.25 * (1.0 - c) ** 2 * d * (d - 1.0)
    # special and restricted: C + C_tilde = 0
    return 0.25 * c * d * (c - 2.0) * (d - 1.0)


def solve_row_params(cls, case, u, lam=1.0, **free):
    """Solve one table row's parameter relations for the full parameter set.

    Performs no admissibility checking beyond basic domain validity; use
    `build_system` to also enforce the class inequalities and derive the
    basis.
    """
    if isinstance(case, str):
        case = case_by_name(case)
    names, n_u = free_inputs_for(cls, case)
    u = tuple(float(v) for v in u)
    if len(u) != n_u:
        raise ConstraintError(
            f"row ({cls.value}, {case.name}) takes {n_u} strength inputs, got {len(u)}"
        )
    extra = set(free) - set(names)
    missing = set(names) - set(free)
    if extra or missing:
        raise ConstraintError(
            f"row ({cls.value}, {case.name}) requires exactly inputs {names}; "
            f"missing {sorted(missing)}, unexpected {sorted(extra)}"
        )
    d = float(free["d"])
    if d <= 1.0:
        raise ConstraintError(f"system construction requires d > 1, got d={d}")
    a, b = case.a, case.b
    B = float(free["B"])

    if cls is SolutionClass.RESTRICTED_FIRST and case.name == "zero-one":
        c_sq = 4.0 * (B / (d - 1.0) - u[0] + float(free["A"]) / d**2)
        if c_sq < 0.0:
            raise ConstraintError(
                "restricted zero-one row needs B/(d-1) - u0 + A/d^2 >= 0 to determine c"
            )
        c = math.sqrt(c_sq)
    else:
        c = float(free["c"])

    C = _class_c_value(cls, a, b, c, d)
    probe = HeunParams(a=a, b=b, c=c, d=d, A=free.get("A", 0.0), B=B, C=C, D=0.0, E=0.0)
    aux = aux_constants(probe)

    if cls is SolutionClass.RESTRICTED_FIRST:
        if case.name == "one-one":
            A = u[0] * d - B * d / (d - 1.0)
        else:
            A = float(free["A"])
        D = 0.0
        probe = replace(probe, A=A, c=c)
        E = restricted_e_value(probe)
    else:
        if case.name == "half-half":
            A = float(free["A"])
            D = float(free["D"])
            E = u[0] - aux.E_tilde + d * (D - 0.25 * c**2)
        elif case.name == "half-one":
            A = float(free["A"])
            D = 0.25 * c * (c + 1.0) - u[1]
            E = (B - u[0]) / (d - 1.0) - aux.E_tilde
        elif case.name == "one-one":
            A = (u[0] - B * d) / (d - 1.0)
            D = 0.25 * c * (c + 2.0) - u[1]
            E = u[2] - aux.E_tilde
        elif case.name == "zero-one":
            A = float(free["A"])
            D = u[0] + (u[1] - B) / (d - 1.0) + 0.25 * c**2
            E = u[0] * d - B - aux.E_tilde
        else:
            raise ConstraintError(f"case {case.name} has no non-zero-energy construction row")

    return HeunParams(a=a, b=b, c=c, d=d, A=A, B=B, C=C, D=D, E=E)


def strengths_from_heun(cls, case, p):
    """Read the strength inputs u_i back from a full parameter set."""
    if isinstance(case, str):
        case = case_by_name(case)
    aux = aux_constants(p)
    d, c = p.d, p.c
    ee = p.E + aux.E_tilde
    if cls is SolutionClass.RESTRICTED_FIRST:
        if case.name == "one-one":
            return (p.A / d + p.B / (d - 1.0),)
        if case.name == "zero-one":
            return (p.B / (d - 1.0) - 0.25 * c**2 + p.A / d**2,)
        return ()
    if case.name == "half-half":
        return (ee - d * (p.D - 0.25 * c**2),)
    if case.name == "half-one":
        return (p.B - (d - 1.0) * ee, 0.25 * c * (c + 1.0) - p.D)
    if case.name == "one-one":
        return (p.A * (d - 1.0) + p.B * d, 0.25 * c * (c + 2.0) - p.D, ee)
    if case.name == "zero-one":
        u0 = (ee + p.B) / d
        return (u0, (p.D - u0 - 0.25 * c**2) * (d - 1.0) + p.B)
    raise ConstraintError(f"case {case.name} has no strength readback")


def _case_energy(case, p):
    if case.zero_energy_only:
        return 0.0
    if case.name == "half-half":
        return 0.25 * p.c**2 - p.D
    return -p.B / (p.d - 1.0)


def build_system(cls, case, u=(), lam=1.0, branch=(1, 1), tol=1e-9, **free):
    """Construct a PhysicalSystem from one table row.

    Solves the row relations, checks the class constraints, derives the
    basis parameters on the requested branch, and records the energy.
    Raises ConstraintError naming the failed condition when the inputs are
    inadmissible.
    """
    if isinstance(case, str):
        case = case_by_name(case)
    if lam <= 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    p = solve_row_params(cls, case, u, lam=lam, **free)
    cl = classify(p, tol=tol)
    if cls not in cl.classes:
        one_a = (1.0 - p.a) ** 2
        one_b = (1.0 - p.b) ** 2
        detail = []
        if 4.0 * p.A / p.d > one_a + 1e-12:
            detail.append(f"4A/d = {4.0 * p.A / p.d:.6g} exceeds (1-a)^2 = {one_a:.6g}")
        if 4.0 * p.B / (p.d - 1.0) < -one_b - 1e-12:
            detail.append(
                f"4B/(d-1) = {4.0 * p.B / (p.d - 1.0):.6g} below -(1-b)^2 = {-one_b:.6g}"
            )
        if not detail:
            detail.append("class equality constraints not met")
        raise ConstraintError(f"inputs violate {cls.value} constraints: " + "; ".join(detail))
    basis = basis_params(p, cls, branch=branch)
    return PhysicalSystem(
        cls=cls,
        case=case,
        lam=float(lam),
        u=strengths_from_heun(cls, case, p),
        heun=p,
        basis=basis,
        energy_param=_case_energy(case, p),
    )


def system_from_heun(p, case, lam=1.0, cls=None, branch=(1, 1), tol=1e-9):
    """Wrap raw equation parameters into a PhysicalSystem.

    This is the entry point for the zero-energy rows and for parameter sets
    produced outside the table-row solver.  Raw d < 1 inputs are accepted
    and normalized first; since the rescaling swaps the roles of b and c,
    the case's (a, b) must match the *normalized* parameters.
    """
    if isinstance(case, str):
        case = case_by_name(case)
    if p.d < 1.0:
        p = normalize_d(p)
    if abs(p.a - case.a) > 1e-12 or abs(p.b - case.b) > 1e-12:
        raise ConstraintError(
            f"(a, b) = ({p.a}, {p.b}) does not match case {case.name} = {case.ab} "
            "(after d-normalization, which swaps b and c)"
        )
    cl = classify(p, tol=tol)
    if cls is None:
        if not cl.classes:
            raise ConstraintError("parameters satisfy no solution class")
        order = [
            SolutionClass.GENERAL,
            SolutionClass.RESTRICTED_FIRST,
            SolutionClass.SPECIAL,
            SolutionClass.RESTRICTED_SECOND,
        ]
        cls = next(k for k in order if k in cl.classes)
    elif cls not in cl.classes:
        raise ConstraintError(f"parameters do not satisfy the {cls.value} constraints")
    basis = basis_params(p, cls, branch=branch)
    try:
        u = strengths_from_heun(cls, case, p)
    except ConstraintError:
        u = ()
    return PhysicalSystem(
        cls=cls,
        case=case,
        lam=float(lam),
        u=u,
        heun=p,
        basis=basis,
        energy_param=_case_energy(case, p),
    )


def energy_param(sys):
    """Dimensionless energy 2E/lambda^2 of the system (0 for zero-energy rows)."""
    return sys.energy_param


def _potential_of_y(sys, y, omy):
    """Potential in y; `omy` is 1-y carried at full relative precision."""
    p = sys.heun
    aux = aux_constants(p)
    a, b, c, d = p.a, p.b, p.c, p.d
    cc = p.C + aux.C_tilde
    ee = p.E + aux.E_tilde
    dmy = (d - 1.0) + omy
    with np.errstate(divide="ignore", invalid="ignore"):
        if sys.case.zero_energy_only:
            bracket = ee + y * (aux.D_tilde - p.D) + cc / dmy - p.A / y + p.B / omy
            return y ** (2.0 * a - 1.0) * omy ** (2.0 * b - 1.0) / dmy * bracket
        if sys.case.name == "half-half":
            return (
                ee + d * (0.25 * c**2 - p.D) - p.A / y + p.B / omy + cc / dmy
            ) / dmy
        if sys.case.name == "half-one":
            return (
                omy / dmy * (y * (0.25 * c * (c + 1.0) - p.D) - p.A / y + cc / dmy)
                + (p.B - (d - 1.0) * ee) / dmy
                + (ee - p.B / (d - 1.0))
            )
        if sys.case.name == "one-one":
            return (
                y * omy / dmy * (ee + y * (0.25 * c * (c + 2.0) - p.D) + cc / dmy)
                + ((d - 1.0) * p.A + p.B * d) / dmy
                + (-p.A - p.B * d / (d - 1.0))
            )
        if sys.case.name == "zero-one":
            return (
                omy / (y * dmy) * (-p.A / y + cc / dmy)
                + (ee + p.B) / (d * y)
                + ((d - 1.0) / d) * ((p.D - 0.25 * c**2) * d - ee + p.B / (d - 1.0)) / dmy
                + (0.25 * c**2 - p.D - p.B / (d - 1.0))
            )
    raise DomainError(f"no potential form for case {sys.case.name}")


def potential_value(sys, x):
    """2V(x)/lambda^2 at physical coordinate x (scalar or array)."""
    y, omy = y_pair(sys.case, sys.lam, x)
    val = _potential_of_y(sys, np.asarray(y, dtype=float), np.asarray(omy, dtype=float))
    arr = np.asarray(val)
    return arr if arr.shape else float(arr)


def restricted_x_potential(sys, x):
    """Closed x-space form of the restricted-class potentials (cross-check path)."""
    if sys.cls is not SolutionClass.RESTRICTED_FIRST:
        raise ConstraintError("x-space closed forms exist for the first restricted family only")
    p = sys.heun
    d, c = p.d, p.c
    xi = sys.lam * np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if sys.case.name == "half-half":
            u_minus = p.B / (d - 1.0) - p.A / d
            u_plus = p.B / (d - 1.0) + p.A / d
            val = 2.0 * (u_minus + u_plus * np.sin(xi)) / np.cos(xi) ** 2
        elif sys.case.name == "half-one":
            val = -(p.A / d) / np.sinh(0.5 * xi) ** 2 - (
                0.25 * c * (c + 1.0)
            ) / np.cosh(0.5 * xi) ** 2
        elif sys.case.name == "one-one":
            u0 = sys.u[0]
            val = -(u0 + 0.25 * c * (c + 2.0) / (1.0 + np.exp(-xi))) / (np.exp(xi) + 1.0)
        elif sys.case.name == "zero-one":
            u0 = sys.u[0]
            val = u0 / (np.exp(xi) - 1.0) - (p.A / (2.0 * d**2)) * (
                d + 1.0 - np.exp(-xi)
            ) / (np.cosh(xi) - 1.0)
        else:
            raise ConstraintError(f"no closed x-space form for case {sys.case.name}")
    arr = np.asarray(val)
    return arr if arr.shape else float(arr)
