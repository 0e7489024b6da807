import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special

from heunqm.errors import DomainError, PoleError
from heunqm.specfun import (
    JacobiIndex,
    complete_beta,
    gauss_2f1,
    incomplete_beta_lower,
    jacobi_norm,
    jacobi_poly,
    jacobi_poly_table,
    log_gamma,
    log_gamma_complex,
)


def hyp2f1_sum_oracle(n, mu, nu, y):
    """Terminating hypergeometric-sum definition, in exact rational arithmetic."""
    from fractions import Fraction

    mu_f, nu_f, y_f = Fraction(float(mu)), Fraction(float(nu)), Fraction(float(y))
    pref = 1.0
    for k in range(n):
        pref *= (mu + k + 1.0) / (k + 1.0)
    total = Fraction(1)
    term = Fraction(1)
    for k in range(n):
        term *= (
            Fraction(-n + k)
            * (n + mu_f + nu_f + 1 + k)
            / ((mu_f + 1 + k) * (k + 1))
            * (1 - y_f)
        )
        total += term
    return pref * float(total)


class TestJacobiPoly:
    def test_degree_zero_is_one(self):
        idx = JacobiIndex(0.3, -0.2)
        for y in (0.0, 0.31, 1.0):
            assert jacobi_poly(0, idx, y) == 1.0

    def test_value_at_right_endpoint(self):
        for n in (1, 3, 7):
            for mu in (0.0, 0.5, 2.5):
                idx = JacobiIndex(mu, 1.2)
                expected = math.exp(log_gamma(n + mu + 1.0) - log_gamma(n + 1.0) - log_gamma(mu + 1.0))
                assert jacobi_poly(n, idx, 1.0) == pytest.approx(expected, rel=1e-13)

    def test_degree_one_legendre_point(self):
        # P_1^{(0,0)}(y) = 2y - 1 in the shifted convention
        assert jacobi_poly(1, JacobiIndex(0.0, 0.0), 0.75) == pytest.approx(0.5, abs=1e-15)

    def test_recursion_matches_terminating_sum(self):
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(40):
            mu, nu = rng.uniform(-0.9, 4.0, 2)
            idx = JacobiIndex(mu, nu)
            n = int(rng.integers(1, 21))
            for y in np.linspace(0.0, 1.0, 11):
                got = jacobi_poly(n, idx, y)
                want = hyp2f1_sum_oracle(n, mu, nu, y)
                worst = max(worst, abs(got - want) / max(1.0, abs(want)))
        assert worst < 1e-12

    def test_invalid_index_rejected(self):
        with pytest.raises(DomainError):
            JacobiIndex(-1.0, 0.0)
        with pytest.raises(DomainError):
            JacobiIndex(0.0, -1.3)

    def test_table_consistent_with_scalar(self):
        idx = JacobiIndex(0.7, -0.3)
        y = np.linspace(0, 1, 7)
        table = jacobi_poly_table(5, idx, y)
        for n in range(6):
            assert np.allclose(table[n], [jacobi_poly(n, idx, v) for v in y], rtol=1e-14)


class TestJacobiNorm:
    def test_trivial_cases(self):
        assert jacobi_norm(0, JacobiIndex(0.0, 0.0)) == pytest.approx(1.0, rel=1e-14)
        assert jacobi_norm(1, JacobiIndex(0.0, 0.0)) == pytest.approx(math.sqrt(3.0), rel=1e-14)

    def test_degree_zero_formula(self):
        for mu, nu in [(0.5, 1.5), (2.0, 0.1), (-0.4, 3.0)]:
            want = math.sqrt(
                (mu + nu + 1.0)
                * math.exp(log_gamma(mu + nu + 1.0) - log_gamma(mu + 1.0) - log_gamma(nu + 1.0))
            )
            assert jacobi_norm(0, JacobiIndex(mu, nu)) == pytest.approx(want, rel=1e-13)

    def test_orthonormality_by_gauss_jacobi_quadrature(self):
        # weight y^nu (1-y)^mu on [0, 1]
        for mu, nu in [(0.5, 1.5), (0.0, 0.0), (2.3, -0.4)]:
            idx = JacobiIndex(mu, nu)
            t, w = scipy.special.roots_jacobi(40, mu, nu)
            y = 0.5 * (t + 1.0)
            scale = 2.0 ** (-(mu + nu + 1.0))
            table = jacobi_poly_table(10, idx, y)
            norms = [jacobi_norm(n, idx) for n in range(11)]
            for n in range(11):
                for m in range(n, 11):
                    val = scale * np.sum(w * norms[n] * table[n] * norms[m] * table[m])
                    assert abs(val - (1.0 if n == m else 0.0)) < 1e-10


class TestLogGamma:
    def test_exact_integers(self):
        assert abs(log_gamma(1.0)) < 1e-14
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)

    def test_half_against_quadrature_oracle(self):
        # integral of t^{-1/2} e^{-t}; frozen value ln(sqrt(pi))
        val, _ = scipy.integrate.quad(lambda t: t**-0.5 * math.exp(-t), 0, np.inf)
        assert math.log(val) == pytest.approx(0.5 * math.log(math.pi), rel=1e-10)
        assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-13)

    def test_accuracy_over_range(self):
        xs = np.concatenate([np.linspace(0.01, 0.99, 37), np.linspace(1.01, 100.0, 211)])
        for x in xs:
            ref = scipy.special.gammaln(x)
            assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))

    def test_reflection_negative(self):
        for x in (-0.5, -2.3, -7.7):
            ref = scipy.special.gammaln(x)  # scipy returns ln|Gamma|
            assert log_gamma(x) == pytest.approx(ref, rel=1e-12)

    def test_pole(self):
        for x in (0.0, -1.0, -5.0):
            with pytest.raises(PoleError):
                log_gamma(x)

    def test_complex_variant(self):
        for w in (1.3 + 0.7j, 0.2 + 2.0j, 2.0j, -1.5 + 0.4j):
            mod, arg = log_gamma_complex(w)
            ref = scipy.special.loggamma(complex(w))
            assert mod == pytest.approx(ref.real, rel=1e-12, abs=1e-12)
            # principal-value phases may differ by 2 pi k
            assert math.cos(arg) == pytest.approx(math.cos(ref.imag), abs=1e-10)
            assert math.sin(arg) == pytest.approx(math.sin(ref.imag), abs=1e-10)

    def test_complex_pole(self):
        with pytest.raises(PoleError):
            log_gamma_complex(0.0 + 0.0j)


class TestGauss2F1:
    def test_at_zero(self):
        assert gauss_2f1(0.3, 1.7, 0.9, 0.0) == 1.0

    def test_two_term_terminating(self):
        for beta, gamma, z in [(0.7, 1.3, 0.5), (2.0, 0.4, -1.5)]:
            assert gauss_2f1(-1.0, beta, gamma, z) == pytest.approx(
                1.0 - beta * z / gamma, rel=1e-14
            )

    def test_arcsin_value(self):
        # 2F1(1/2, 1/2; 3/2; z^2) = arcsin(z)/z at z = 0.5
        assert gauss_2f1(0.5, 0.5, 1.5, 0.25) == pytest.approx(math.pi / 3.0 * 0.5 / 0.5, rel=1e-14)
        assert gauss_2f1(0.5, 0.5, 1.5, 0.25) == pytest.approx(math.asin(0.5) / 0.5, rel=1e-14)

    def test_against_scipy(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            p, q = rng.uniform(-2, 3, 2)
            r = rng.uniform(0.2, 3)
            z = rng.uniform(-0.8, 0.8)
            assert gauss_2f1(p, q, r, z) == pytest.approx(
                float(scipy.special.hyp2f1(p, q, r, z)), rel=1e-11, abs=1e-11
            )

    def test_monotone_partial_sums_for_positive_parameters(self):
        # all series terms positive, so partial sums increase
        p, q, r, z = 0.8, 1.1, 1.9, 0.6
        term, total, partials = 1.0, 1.0, [1.0]
        for k in range(60):
            term *= (p + k) * (q + k) / ((r + k) * (k + 1.0)) * z
            total += term
            partials.append(total)
        assert all(b >= a for a, b in zip(partials, partials[1:]))
        assert gauss_2f1(p, q, r, z) >= partials[-1] - 1e-12

    def test_pole_error(self):
        with pytest.raises(PoleError):
            gauss_2f1(0.5, 0.7, -1.0, 0.3)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            gauss_2f1(0.5, 0.7, 1.1, 1.0)


class TestIncompleteBeta:
    def test_unit_integrand(self):
        for y in (0.0, 0.25, 0.8, 1.0):
            assert incomplete_beta_lower(y, 1.0, 1.0) == pytest.approx(y, abs=1e-14)

    def test_complete_value(self):
        for a, b in [(0.5, 0.5), (2.0, 3.0), (1.3, 0.7)]:
            want = math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))
            assert incomplete_beta_lower(1.0, a, b) == pytest.approx(want, rel=1e-13)

    def test_quarter_half_half_quadrature_oracle(self):
        val, err = scipy.integrate.quad(lambda t: t**-0.5 * (1 - t) ** -0.5, 0, 0.25)
        assert val == pytest.approx(math.pi / 3.0, rel=1e-10)
        assert incomplete_beta_lower(0.25, 0.5, 0.5) == pytest.approx(math.pi / 3.0, rel=1e-12)

    def test_reflection_symmetry(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            a, b = rng.uniform(0.2, 4.0, 2)
            y = rng.uniform(0.0, 1.0)
            total = incomplete_beta_lower(y, a, b) + incomplete_beta_lower(1.0 - y, b, a)
            assert total == pytest.approx(complete_beta(a, b), rel=1e-12)

    def test_against_scipy(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            a, b = rng.uniform(0.2, 4.0, 2)
            y = rng.uniform(0.0, 1.0)
            ref = scipy.special.betainc(a, b, y) * scipy.special.beta(a, b)
            assert incomplete_beta_lower(y, a, b) == pytest.approx(ref, rel=1e-10, abs=1e-13)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            incomplete_beta_lower(0.5, -1.0, 1.0)
        with pytest.raises(DomainError):
            incomplete_beta_lower(0.5, 1.0, 0.0)
        with pytest.raises(DomainError):
            incomplete_beta_lower(1.5, 1.0, 1.0)
