import math
from fractions import Fraction

import pytest

from wrightlab import asymptotics as asy
from wrightlab.closed_forms import phi_closed, psi11_polynomial
from wrightlab.errors import DomainError, RangeError
from wrightlab.integral_reps import phi_real_integral
from wrightlab.specfun import bessel
from wrightlab.wright_core import WrightParams, phi_series, psi11_normalized, psi11_series

GOLDEN = (1 + math.sqrt(5)) / 2


def rel(a, b):
    return abs(a - b) / abs(b)


def series(rho, k, x):
    return psi11_series(WrightParams(rho, k, 0.0, x, allow_real_k=True)).to_float()


class TestExactExpansions:
    def test_exact_expansion(self):
        assert rel(asy.psi11_exact_expansion(1, 2, 10.0).to_float(), 100 * math.exp(10) * 1.2) < 1e-13
        assert rel(asy.psi11_exact_expansion(0.5, 1, -3.0).to_float(), -1.5 * math.exp(-3)) < 1e-13
        assert rel(asy.psi11_exact_expansion(2, 1, 1.0).to_float(), 2 * math.e) < 1e-13

    def test_large_rho(self):
        exact = psi11_polynomial(50, 2, 1.0)
        assert asy.psi11_large_rho(50, 2, 1.0, 1).rel_diff(exact) < 4e-4
        assert asy.psi11_large_rho(1e3, 3, 2.0, 1).rel_diff(psi11_polynomial(1000, 3, 2.0)) < 1e-5
        for rho in (3.0, 40.0):
            got = asy.psi11_large_rho(rho, 1, 0.7, 0).to_float()
            assert rel(got, rho * 0.7 * math.exp(0.7)) < 1e-14

    def test_algebraic_expansion(self):
        assert rel(asy.psi11_algebraic_expansion(0.5, 1.5, -30.0, 4), series(0.5, 1.5, -30.0)) < 1e-3
        errs = [rel(asy.psi11_algebraic_expansion(1, 0.5, x, 6), series(1, 0.5, x))
                for x in (-20.0, -30.0, -40.0)]
        assert errs[0] > errs[1] > errs[2]

    def test_algebraic_rejects_integer_k(self):
        with pytest.raises(DomainError):
            asy.psi11_algebraic_expansion(0.5, 2.0, -30.0)


class TestSaddle:
    def test_roots(self):
        assert asy.solve_saddle(1, 1).t_s == pytest.approx(GOLDEN, rel=1e-14)
        s = asy.solve_saddle(0.5, 1)
        assert s.t_s == pytest.approx(2.31459621227675, rel=1e-12)
        assert abs(s.t_s ** 0.5 * (s.t_s - 1) - 2) < 1e-12
        assert asy.solve_saddle(-0.5, 2).t_s == pytest.approx(GOLDEN + 1, rel=1e-13)

    def test_negative_rho_saddle_approx(self):
        got = asy.psi11_saddle_approx(-0.5, 40, -80.0)
        assert got.rel_diff(psi11_series(-0.5, 40, 0.0, -80.0)) < 5e-2

    def test_saddle_sign_checks(self):
        with pytest.raises(DomainError):
            asy.psi11_saddle_approx(0.5, 20, -1.0)
        with pytest.raises(DomainError):
            asy.psi11_saddle_approx(-0.5, 20, 1.0)

    def test_table_row(self):
        approx = asy.psi11_saddle_approx(0.5, 20, 20.0)
        assert approx.rel_diff(psi11_series(0.5, 20, 0.0, 20.0)) == pytest.approx(1.237e-2, rel=2e-3)


class TestCoefficients:
    def test_b_rho1(self):
        b = asy.b_coeffs(Fraction(1), 4)
        assert b.exact == (1, Fraction(1, 2), Fraction(1, 8), 0)
        assert asy.b_coeffs(1.0, 2).values[1] == 0.5

    def test_b_range(self):
        with pytest.raises(RangeError):
            asy.b_coeffs(1.0, 8)

    def test_b_expansion_reproduces_saddle(self):
        # chi large: t_s0 = chi * sum B_r chi^-r against the Newton root
        rho, chi = 0.5, 40.0
        b = asy.b_coeffs(rho, 7).values
        approx = chi * math.fsum(c * chi ** -r for r, c in enumerate(b))
        u = 1 / (rho * chi ** (1 + rho))
        exact = asy.solve_saddle(rho, u).t_s
        assert rel(approx, exact) < 1e-12

    def test_c_values(self):
        c = asy.c_coeffs(Fraction(-1, 3), 5)
        assert c.exact[1] == Fraction(5, 72)
        for j in range(5):
            assert c.values[j] == pytest.approx(asy.c_neg_third(j), rel=1e-12)
        assert asy.c_coeffs(-0.5, 3).values == (1.0, 0.0, 0.0)

    def test_c_range(self):
        with pytest.raises(RangeError):
            asy.c_coeffs(0.5, 6)

    def test_largek_phase(self):
        c = asy.largek_phase_coeffs(1.0)
        assert c[:3] == [2.0, 0.5, pytest.approx(1 / 12)]


class TestPhiAsymptotics:
    def test_pos_rho_growing(self):
        assert rel(asy.phi_asym_pos_rho(1, 25.0, 2), 5 * bessel("I", 1, 10.0)) < 1e-3

    def test_pos_rho_oscillatory(self):
        assert rel(asy.phi_asym_pos_rho(1, -25.0, 2), -5 * bessel("J", 1, 10.0)) < 1e-2

    def test_pos_rho_decays(self):
        assert abs(asy.phi_asym_pos_rho(0.5, -40.0)) < abs(asy.phi_asym_pos_rho(0.5, -20.0))

    def test_neg_rho_pos_x_gaussian(self):
        rep = asy.phi_asym_neg_rho_pos_x(0.5, 3.0)
        want = -3 * math.exp(-9 / 4) / (2 * math.sqrt(math.pi))
        assert rep.value.to_float() == pytest.approx(want, rel=1e-14)
        assert rep.regime == "gaussian-exact"

    def test_neg_rho_pos_x_algebraic(self):
        # the series is out of reach at x = 60; the branch-cut integral stands in
        want = phi_real_integral(0.7, 60.0, "+", tol=1e-10).value
        assert rel(asy.phi_asym_neg_rho_pos_x(0.7, 60.0).value.to_float(), want) < 1e-2

    def test_neg_rho_pos_x_airy(self):
        rep = asy.phi_asym_neg_rho_pos_x(1 / 3, 20.0)
        assert rep.regime == "oscillatory"
        assert rel(rep.value.to_float(), phi_closed(-1 / 3, 20.0)) < 1e-2

    @pytest.mark.parametrize("sigma,regime", [
        (0.2, "exp-dominant"), (1 / 3, "oscillatory"), (0.4, "exp-subdominant"),
        (0.5, "gaussian-exact"), (0.8, "algebraic")])
    def test_regime_labels(self, sigma, regime):
        rep = asy.phi_asym_neg_rho_pos_x(sigma, 10.0)
        assert rep.regime == regime and rep.method == "regime:" + regime

    def test_neg_rho_neg_x(self):
        for x in (0.5, 2.5, 7.0):
            want = x * math.exp(-x * x / 4) / (2 * math.sqrt(math.pi))
            assert asy.phi_asym_neg_rho_neg_x(0.5, x) == pytest.approx(want, rel=1e-13)
        assert rel(asy.phi_asym_neg_rho_neg_x(1 / 3, 15.0), phi_closed(-1 / 3, -15.0)) < 1e-3
        assert rel(asy.phi_asym_neg_rho_neg_x(2 / 3, 12.0), phi_closed(-2 / 3, -12.0)) < 1e-2

    def test_neg_rho_neg_x_log_scaled(self):
        v = asy.phi_asym_neg_rho_neg_x_lsr(0.5, 60.0)
        assert v.log_abs == pytest.approx(math.log(60 / (2 * math.sqrt(math.pi))) - 900, rel=1e-13)


class TestLargeK:
    def test_negrho_largek_half(self):
        want = -(1 / (2 * math.sqrt(100 * math.pi))) * (1 + (3 / 8 - 1 / 4) / 100)
        got = asy.psi11_negrho_largek(-0.5, 100, 1.0)
        assert got == pytest.approx(want, rel=1e-14)
        assert rel(got, psi11_normalized(-0.5, 100, 0.0, 1.0).to_float()) < 1e-4
        assert asy.psi11_negrho_largek(-0.5, 100, 0.0) == 0.0

    def test_gamma_phi_ratio_negative_rho(self):
        assert abs(asy.theorem6_ratio(-0.5, 400, 2.0) - 1) < 0.05
        far = abs(asy.theorem6_ratio(-1 / 3, 1e4, -1.0) - 1)
        near = abs(asy.theorem6_ratio(-1 / 3, 100, -1.0) - 1)
        assert far < near

    def test_gamma_phi_ratio_rho_one(self):
        # claimed: within 0.1 of 1 at k = 400, x = 1
        r400 = asy.theorem6_ratio(1.0, 400, 1.0)
        r100 = asy.theorem6_ratio(1.0, 100, 1.0)
        assert abs(r400 - 1) < abs(r100 - 1)
        assert abs(r400 - 1) < 0.1

    def test_rho_specializations(self):
        for k, x in ((100, 1.0), (400, 3.0)):
            assert asy.psi11_rho1_largek(k, x).rel_diff(asy.psi11_largek_smallx(1.0, k, x, 3)) < 1e-12
            assert asy.psi11_rho2_largek(k, x).rel_diff(asy.psi11_largek_smallx(2.0, k, x, 3)) < 1e-12
