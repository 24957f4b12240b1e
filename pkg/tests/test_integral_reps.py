import math

import numpy as np
import pytest

from wrightlab import integral_reps as ir
from wrightlab.asymptotics import solve_saddle
from wrightlab.closed_forms import phi_closed
from wrightlab.errors import DomainError
from wrightlab.wright_core import phi_series, psi11_series

SQRT_PI = math.sqrt(math.pi)
GAUSS_2 = 2 * math.exp(-1) / (2 * SQRT_PI)  # phi(-1/2, 0; -2)
GAUSS_1 = math.exp(-0.25) / (2 * SQRT_PI)  # phi(-1/2, 0; -1)
# mpmath series values
PHI_QUARTER_M1 = 0.095833854142670884
PHI_SIXTH_M1 = 0.062437101953106448
PHI_HALF_1 = 1.3009467474185232
PHI_THIRD_HALF = 0.30301324361798458


def near(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


class TestMixing:
    def test_closed(self):
        assert near(ir.mixing_relation_rhs(1.0, 1, 0.5).value, 0.5 * math.exp(0.5), 1e-9)

    def test_negative_rho(self):
        want = psi11_series(-0.5, 2, 0.0, -1.0).to_float()
        assert near(ir.mixing_relation_rhs(-0.5, 2, 1.0).value, want, 1e-8)

    def test_k_zero(self):
        # claimed to reduce to e^x at k = 0
        assert near(ir.mixing_relation_rhs(0.6, 0, 1.0).value, math.e, 1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            ir.mixing_relation_rhs(-0.5, 1.5, 1.0)


class TestKWhittaker:
    def test_values(self):
        assert near(ir.theorem1_rhs("1/3", 1, 1.0).value, math.exp(-1) / 3, 1e-9)
        assert near(ir.theorem1_rhs("2/3", 1, 1.0).value, 2 * math.exp(-1) / 3, 1e-9)
        want = psi11_series(-1 / 3, 3, 0.0, -2.0).to_float()
        assert near(ir.theorem1_rhs("1/3", 3, 2.0).value, want, 1e-7)


class TestBranchCutAndMikusinski:
    def test_real_integral(self):
        assert near(ir.phi_real_integral(0.5, 2.0, "-").value, GAUSS_2, 1e-10)
        assert near(ir.phi_real_integral(1 / 3, 1.0, "-").value, phi_closed(-1 / 3, -1.0), 1e-8)
        assert near(ir.phi_real_integral(0.6, 1.0, "+").value, phi_series(-0.6, 0.0, 1.0), 1e-7)

    def test_mikusinski(self):
        assert near(ir.phi_mikusinski(0.5, 2.0).value, GAUSS_2, 1e-10)
        assert near(ir.phi_mikusinski(2 / 3, 3.0).value, phi_closed(-2 / 3, -3.0), 1e-7)
        v = ir.phi_mikusinski(0.9, 1.0).value
        assert v > 0 and near(v, phi_series(-0.9, 0.0, -1.0), 1e-7)

    def test_mikusinski_deep_tail(self):
        # far below double range: only the log-scaled form carries it
        lv = ir.phi_mikusinski_lsr(0.5, 80.0)
        assert lv.sign == 1
        assert lv.log_abs == pytest.approx(math.log(80 / (2 * SQRT_PI)) - 1600, rel=1e-10)


class TestPositivity:
    @pytest.mark.parametrize("sigma", [0.5, 0.25, 0.9])
    def test_grid(self, sigma):
        rep = ir.positivity_scan(sigma, np.linspace(0.1, 10, 25))
        assert rep.all_positive and rep.points == 25


class TestHalvingAndDerived:
    def test_halving(self):
        assert near(ir.halving_relation_rhs(0.5, 1.0).value, PHI_QUARTER_M1, 1e-7)
        assert near(ir.halving_relation_rhs(2 / 3, 1.0).value, phi_closed(-1 / 3, -1.0), 1e-7)

    def test_halving_at_third_vs_sixth_route(self):
        a = ir.halving_relation_rhs(1 / 3, 2.0).value
        b = ir.derived_reps("sixth", 2.0).value
        assert near(a, b, 1e-6)

    def test_derived(self):
        assert near(ir.derived_reps("quarter", 1.0).value, PHI_QUARTER_M1, 1e-7)
        assert near(ir.derived_reps("sixth", 1.0).value, PHI_SIXTH_M1, 1e-7)
        assert ir.derived_reps("quarter", 4.0).value > 0


class TestTransforms:
    def test_laplace(self):
        assert near(ir.laplace_transform_lhs("neg", 0.5, 1.0, 1.0, 1.0).value, math.exp(-1), 1e-7)
        assert near(ir.laplace_transform_lhs("pos", 1.0, 0.0, 1.0, 2.0, "+").value,
                    math.exp(0.5) - 1, 1e-7)
        assert near(ir.laplace_transform_lhs("neg", 0.5, 1.0, 2.0, 4.0).value,
                    math.exp(-4) / 4, 1e-7)

    def test_mellin(self):
        assert near(ir.mellin_lhs(0.5, 2.0, 1.0).value, 1.0, 1e-8)
        assert near(ir.mellin_lhs(0.5, 1.0, 1.0).value, 1 / SQRT_PI, 1e-8)
        assert near(ir.mellin_lhs(2 / 3, 1.5, 2.0).value, ir.mellin_rhs(2 / 3, 1.5, 2.0), 1e-8)
        assert ir.mellin_rhs(2 / 3, 1.5, 2.0) == pytest.approx(2 * math.gamma(1.5))

    def test_bilateral(self):
        assert near(ir.bilateral_exp_lhs(0.5, 1.0).value, math.e, 1e-7)
        assert near(ir.bilateral_exp_lhs(1 / 3, 0.0).value, 1.0, 1e-7)
        assert near(ir.bilateral_exp_lhs(1 / 3, 0.8).value, math.exp(0.512), 1e-7)


class TestProducts:
    def test_t3(self):
        assert near(ir.mult_theorem_rhs("T3", (0.5, 0.5), 1.0).value, PHI_QUARTER_M1, 1e-6)

    def test_t4_value(self):
        # stated target e^(-1/4)/(2 sqrt(pi)) ~ 0.2197104
        assert near(ir.mult_theorem_rhs("T4", (0.5, 1.0), 1.0).value, 0.2197104, 1e-6)

    def test_t4_against_exact_target(self):
        assert near(ir.mult_theorem_rhs("T4", (0.5, 1.0), 1.0).value, GAUSS_1, 1e-8)

    @pytest.mark.parametrize("params", [(1.0, 1.0), (1.5, 0.5), (0.8, 1.5)])
    def test_t4_divergent_regions(self, params):
        with pytest.raises(DomainError):
            ir.mult_theorem_rhs("T4", params, 1.0)

    def test_t5(self):
        assert near(ir.mult_theorem_rhs("T5", (0.5, 1.0), 1.0, "+").value, PHI_HALF_1, 1e-6)


class TestReflection:
    def test_forward(self):
        assert near(ir.reflection_pair(0.5, 1.0, "forward").value, PHI_HALF_1, 1e-6)

    def test_backward(self):
        # stated target ~ 0.2197104
        assert near(ir.reflection_pair(0.5, 1.0, "backward").value, 0.2197104, 1e-6)

    def test_backward_exact_target(self):
        assert near(ir.reflection_pair(0.5, 1.0, "backward").value, GAUSS_1, 1e-8)

    def test_forward_two_routes(self):
        a = ir.reflection_pair(1 / 3, 0.5, "forward").value
        b = ir.reflection_pair(1 / 3, 0.5, "forward", "special").value
        assert near(a, PHI_THIRD_HALF, 1e-6) and near(a, b, 1e-6)


class TestSaddleClosedForm:
    def test_values(self):
        assert ir.saddle_closed_form_check(1.0, 1.0) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-6)
        assert ir.saddle_ys_closed_form(-0.5, 1.0) == pytest.approx(0.381966011, abs=1e-6)
        assert ir.saddle_closed_form_check(0.5, 1.0) == pytest.approx(solve_saddle(0.5, 1.0).t_s,
                                                                      abs=1e-6)
