import math

import pytest

from wrightlab.errors import AccuracyError, DomainError
from wrightlab.quadrature import QuadResult, quad_finite, quad_oscillatory_sum, quad_semi_infinite


def test_exponential():
    r = quad_semi_infinite(lambda t: math.exp(-t), "exponential", 1e-12)
    assert r.value == pytest.approx(1.0, abs=1e-12)
    assert r.abs_err_estimate <= 1e-12 and r.evaluations > 0


def test_gaussian_moment():
    r = quad_semi_infinite(lambda t: t * math.exp(-t * t / 4), "gaussian", 1e-12)
    assert r.value == pytest.approx(2.0, abs=2e-12)


def test_factorial_scale():
    r = quad_semi_infinite(lambda t: math.exp(-t + 19 * math.log(t)) if t > 0 else 0.0,
                           "exponential", 1e-12, scale=19.0)
    assert r.value == pytest.approx(math.factorial(19), rel=1e-12)


def test_algebraic_tail():
    r = quad_semi_infinite(lambda t: 1 / (1 + t) ** 3, ("algebraic", 3), 1e-9)
    assert r.value == pytest.approx(0.5, abs=1e-9)


def test_endpoint_singularity():
    r = quad_semi_infinite(lambda t: math.exp(-t) / math.sqrt(t) if t > 0 else 0.0,
                           "exponential", 1e-10)
    assert r.value == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_tolerance_failure_carries_best():
    with pytest.raises(AccuracyError) as info:
        quad_semi_infinite(lambda t: math.exp(-t), "exponential", 1e-17)
    assert isinstance(info.value.best, QuadResult)
    assert info.value.best.value == pytest.approx(1.0, abs=1e-12)


def test_bad_hints():
    with pytest.raises(DomainError):
        quad_semi_infinite(math.exp, "linear")
    with pytest.raises(DomainError):
        quad_semi_infinite(math.exp, "algebraic", power=0.5)


def test_non_finite_integrand():
    with pytest.raises(AccuracyError):
        quad_semi_infinite(lambda t: math.inf, "exponential")


def test_finite():
    r = quad_finite(math.sin, 0.0, math.pi, 1e-12)
    assert r.value == pytest.approx(2.0, abs=1e-12)


def test_oscillatory_sum():
    # int_0^inf sin(t)/t dt = pi/2, conditionally convergent
    f = lambda t: math.sin(t) / t if t > 0 else 1.0
    r = quad_oscillatory_sum(f, lambda j: j * math.pi, 1e-9)
    assert r.value == pytest.approx(math.pi / 2, abs=1e-9)


def test_result_validation():
    with pytest.raises(ValueError):
        QuadResult(1.0, -1.0, 3, 1.0)
