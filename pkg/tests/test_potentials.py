import math

import numpy as np
import pytest

from heunqm.errors import ConstraintError
from heunqm.heun import HeunParams, SolutionClass, classify
from heunqm.potentials import (
    build_system,
    energy_dial_for,
    energy_param,
    potential_value,
    restricted_x_potential,
    solve_row_params,
    strengths_from_heun,
    system_from_heun,
)
from heunqm.transforms import case_by_name

G = SolutionClass.GENERAL
S = SolutionClass.SPECIAL
R = SolutionClass.RESTRICTED_FIRST

# one representative admissible input per construction row
ROW_INPUTS = {
    (G, "half-half"): dict(u=(0.5,), d=2.0, c=1.4, A=-0.2, B=0.3, D=-1.0),
    (G, "half-one"): dict(u=(0.0, -8.0), d=2.2, c=0.7, A=-0.4, B=0.8),
    (G, "one-one"): dict(u=(0.0, -1.0, -4.0), d=1.8, c=1.1, B=0.4),
    (G, "zero-one"): dict(u=(-3.0, -2.0), d=2.1, c=0.8, A=-0.5, B=0.1),
    (S, "half-half"): dict(u=(1.0,), d=1.7, c=0.9, A=-0.3, B=0.2, D=-2.0),
    (S, "half-one"): dict(u=(0.0, -8.0), d=2.2, c=0.7, A=-0.4, B=0.8),
    (S, "one-one"): dict(u=(0.0, -1.0, -4.0), d=1.8, c=1.1, B=0.4),
    (S, "zero-one"): dict(u=(-3.0, -2.0), d=2.1, c=0.8, A=-0.5, B=0.1),
    (R, "half-half"): dict(u=(), d=1.9, c=3.2, A=-0.3, B=0.4),
    (R, "half-one"): dict(u=(), d=2.0, c=4.0, A=-1.0, B=1.0),
    (R, "one-one"): dict(u=(-0.9,), d=1.7, c=5.0, B=0.7),
    (R, "zero-one"): dict(u=(-2.0,), d=2.2, A=-0.5, B=1.2),
}


def build_row(cls, case_name, **overrides):
    kw = dict(ROW_INPUTS[(cls, case_name)])
    kw.update(overrides)
    u = kw.pop("u")
    return build_system(cls, case_name, u=u, lam=1.0, **kw)


class TestRowSolver:
    def test_general_one_one_A_relation(self):
        p = solve_row_params(G, "one-one", u=(3.0, 0.0, 0.0), d=2.0, c=1.0, B=-1.0)
        assert p.A == pytest.approx(5.0, rel=1e-14)

    def test_restricted_one_one_A_relation(self):
        p = solve_row_params(R, "one-one", u=(3.0,), d=2.0, c=1.0, B=-1.0)
        assert p.A == pytest.approx(8.0, rel=1e-14)

    def test_inadmissible_inputs_rejected_by_build(self):
        # the same relations violate the B inequality (b = 1 needs B >= 0)
        with pytest.raises(ConstraintError):
            build_system(G, "one-one", u=(3.0, 0.0, 0.0), lam=1.0, d=2.0, c=1.0, B=-1.0)

    def test_unknown_or_missing_inputs(self):
        with pytest.raises(ConstraintError):
            solve_row_params(G, "one-one", u=(0.0, 0.0, 0.0), d=2.0, c=1.0, B=0.2, A=1.0)
        with pytest.raises(ConstraintError):
            solve_row_params(G, "one-one", u=(0.0, 0.0, 0.0), d=2.0, c=1.0)
        with pytest.raises(ConstraintError):
            solve_row_params(G, "one-one", u=(0.0,), d=2.0, c=1.0, B=0.2)

    def test_zero_potential_degenerate_row(self):
        s = build_system(S, "one-one", u=(0.0, 0.0, 0.0), lam=1.0, d=2.0, c=1.0, B=0.0)
        assert s.heun.A == 0.0
        xs = np.linspace(-10, 10, 101)
        assert np.max(np.abs(potential_value(s, xs))) < 1e-13


class TestBuildSystem:
    @pytest.mark.parametrize("cls,case_name", sorted(ROW_INPUTS, key=str))
    def test_roundtrip_strengths(self, cls, case_name):
        sys = build_row(cls, case_name)
        u_back = strengths_from_heun(cls, case_name, sys.heun)
        for got, want in zip(u_back, ROW_INPUTS[(cls, case_name)]["u"]):
            assert got == pytest.approx(want, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("cls,case_name", sorted(ROW_INPUTS, key=str))
    def test_classification_holds(self, cls, case_name):
        sys = build_row(cls, case_name)
        assert cls in classify(sys.heun).classes
        assert sys.heun.a == sys.case.a and sys.heun.b == sys.case.b

    def test_energy_param_box(self):
        sys = build_row(G, "half-half")
        p = sys.heun
        assert energy_param(sys) == pytest.approx(0.25 * p.c**2 - p.D, rel=1e-13)

    def test_energy_param_halfline(self):
        sys = build_row(G, "half-one")
        p = sys.heun
        assert energy_param(sys) == pytest.approx(-p.B / (p.d - 1.0), rel=1e-13)

    def test_zero_energy_case_via_raw_params(self):
        case = case_by_name("half-threehalf")
        p = HeunParams(a=0.5, b=1.5, c=1.0, d=2.0, A=-0.5, B=0.3, C=0.0, D=0.2, E=-0.4)
        sys = system_from_heun(p, case, lam=1.0, cls=G)
        assert sys.zero_energy_only and energy_param(sys) == 0.0
        val = potential_value(sys, 1.3)
        assert math.isfinite(val)
        with pytest.raises(ConstraintError):
            build_system(G, "half-threehalf", u=(0.0,), lam=1.0, d=2.0, c=1.0, A=0.0, B=0.0, D=0.0)

    def test_d_below_one_rejected(self):
        with pytest.raises(ConstraintError):
            build_row(G, "one-one", d=0.5)

    def test_raw_params_below_one_accepted_and_converted(self):
        # invert the rescaling by hand: the raw d < 1 form must build the
        # same system as its normalized image
        ref = build_row(S, "one-one")
        q = ref.heun
        raw = HeunParams(
            a=q.a, b=q.c, c=q.b, d=1.0 / q.d,
            A=q.A / q.d**2, B=q.C / q.d**2, C=q.B / q.d**2, D=q.D, E=q.E / q.d,
        )
        sys = system_from_heun(raw, "one-one", lam=1.0, cls=S)
        for f in ("a", "b", "c", "d", "A", "B", "C", "D", "E"):
            assert getattr(sys.heun, f) == pytest.approx(getattr(q, f), rel=1e-12)
        assert sys.energy_param == pytest.approx(ref.energy_param, rel=1e-12)

    def test_row_metadata_errors(self):
        from heunqm.errors import DomainError

        with pytest.raises(ConstraintError):
            solve_row_params(SolutionClass.RESTRICTED_SECOND, "one-one", u=(0.0,), d=2.0, B=0.1)
        with pytest.raises(DomainError):
            energy_dial_for("half-threehalf")

    def test_x_form_requires_restricted(self):
        sys = build_row(G, "one-one")
        with pytest.raises(ConstraintError):
            restricted_x_potential(sys, 1.0)


class TestPotentialValues:
    def test_restricted_box_closed_form_at_origin(self):
        sys = build_row(R, "half-half")
        p = sys.heun
        u_minus = p.B / (p.d - 1.0) - p.A / p.d
        assert potential_value(sys, 0.0) == pytest.approx(2.0 * u_minus, rel=1e-13)

    def test_restricted_half_one_special_point(self):
        sys = build_row(R, "half-one")
        p = sys.heun
        x = 2.0 * math.log(1.0 + math.sqrt(2.0))  # sinh(x/2) = 1, cosh(x/2) = sqrt(2)
        want = -(p.A / p.d) - p.c * (p.c + 1.0) / 8.0
        assert potential_value(sys, x) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("case_name", ["half-half", "half-one", "one-one", "zero-one"])
    def test_restricted_x_form_agrees(self, case_name):
        sys = build_row(R, case_name)
        case = sys.case
        if case_name == "half-half":
            xs = np.linspace(-1.4, 1.4, 201)
        elif case_name == "one-one":
            xs = np.linspace(-12.0, 12.0, 201)
        else:
            xs = np.linspace(0.05, 14.0, 201)
        v1 = potential_value(sys, xs)
        v2 = restricted_x_potential(sys, xs)
        scale = np.maximum(1.0, np.abs(v1))
        assert np.max(np.abs(v1 - v2) / scale) < 1e-12

    def test_decay_at_infinity(self):
        # half-line rows decay exponentially toward +infinity
        for cls, case_name in [(G, "half-one"), (S, "zero-one"), (R, "half-one")]:
            sys = build_row(cls, case_name)
            assert abs(potential_value(sys, 50.0)) < 1e-8
        # full-line rows decay at +infinity; at -infinity they approach
        # a constant that vanishes when the step strength is zero
        sys = build_row(G, "one-one")
        assert abs(potential_value(sys, 50.0)) < 1e-8
        assert abs(potential_value(sys, -50.0)) < 1e-8  # u0 = 0 in the row inputs

    @pytest.mark.parametrize("cls,case_name", sorted(ROW_INPUTS, key=str))
    def test_assembled_form_matches_transformed_equation(self, cls, case_name):
        """2V/lam^2 must equal the raw transformed-equation expression minus
        the energy parameter, independently reassembled here."""
        from heunqm.heun import aux_constants
        from heunqm.potentials import energy_param
        from heunqm.transforms import y_of_x

        sys = build_row(cls, case_name)
        p = sys.heun
        aux = aux_constants(p)
        if case_name == "half-half":
            xs = np.linspace(-1.45, 1.45, 41)
        elif case_name == "one-one":
            xs = np.linspace(-12.0, 12.0, 41)
        else:
            xs = np.linspace(0.2, 12.0, 41)
        y = y_of_x(sys.case, sys.lam, xs)
        bracket = (
            p.E
            + aux.E_tilde
            + y * (aux.D_tilde - p.D)
            + (p.C + aux.C_tilde) / (p.d - y)
            - p.A / y
            + p.B / (1.0 - y)
        )
        u_of_y = y ** (2.0 * p.a - 1.0) * (1.0 - y) ** (2.0 * p.b - 1.0) / (p.d - y) * bracket
        want = u_of_y + energy_param(sys)
        got = potential_value(sys, xs)
        scale = np.maximum(1.0, np.abs(want))
        assert np.max(np.abs(got - want) / scale) < 1e-11

    @pytest.mark.parametrize(
        "cls,case_name",
        [(G, "half-half"), (G, "half-one"), (G, "one-one"), (G, "zero-one"),
         (S, "half-half"), (S, "one-one")],
    )
    def test_energy_dial_invariance(self, cls, case_name):
        """Shifting the energy dial moves the energy but not the potential."""
        base = build_row(cls, case_name)
        dial = energy_dial_for(case_name)
        delta = 0.37
        shifted = build_row(cls, case_name, **{dial: ROW_INPUTS[(cls, case_name)][dial] + delta})
        if case_name == "half-half":
            xs = np.linspace(-1.5, 1.5, 301)
            expected_shift = -delta  # energy = c^2/4 - D
        elif case_name == "one-one":
            xs = np.linspace(-15, 15, 301)
            expected_shift = -delta / (base.heun.d - 1.0)
        else:
            xs = np.linspace(0.05, 20, 301)
            expected_shift = -delta / (base.heun.d - 1.0)
        v0 = potential_value(base, xs)
        v1 = potential_value(shifted, xs)
        assert np.max(np.abs(v1 - v0)) < 1e-12 * max(1.0, np.max(np.abs(v0)))
        assert energy_param(shifted) - energy_param(base) == pytest.approx(
            expected_shift, rel=1e-12
        )
        assert shifted.u == pytest.approx(base.u, rel=1e-12)
