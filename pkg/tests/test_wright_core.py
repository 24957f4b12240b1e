import math

import pytest

from wrightlab.errors import ConvergenceError, DomainError, NumericOverflowError
from wrightlab.logscale import LogScaledReal, LogSeriesAccumulator
from wrightlab.wright_core import (
    PhiParams,
    WrightParams,
    phi_series,
    phi_series_lsr,
    psi11_normalized,
    psi11_outcome,
    psi11_series,
)

# phi(rho, delta; x) frozen from mpmath nsum at 50 digits
PHI_ORACLE = [
    (0.5, 0.0, 3.0, 16.837963219156131),
    (0.5, 0.0, -3.0, -0.019847476447440055),
    (-0.3, 0.0, 4.0, 0.92043849409835265),
    (-0.3, 0.0, -4.0, 0.025601432551607407),
    (-0.6, 0.0, 1.0, -0.14854170334774779),
    (-0.9, 0.0, -1.0, 0.90733207105914411),
    (-0.25, 0.0, -1.0, 0.095833854142670884),
    (0.5, 0.0, 1.0, 1.3009467474185232),
    (2.0, 0.0, -10.0, -2.9751455633002128),
    (1.5, 0.5, 2.0, 3.2239167610543633),
    (-0.4, 1.5, 2.0, 5.0806465410337127),
    (-0.7, 0.0, 10.0, -0.014089159006109289),
]

# 1Psi1(rho, k; rho, delta; x), same oracle (rising factorial form for integer k)
PSI_ORACLE = [
    (0.5, 1.5, 0.0, -30.0, 6.4912576059320085e-5),
    (1.0, 0.5, 0.0, -20.0, -0.11646184138415434),
    (-0.5, 0.25, 0.0, 1.0, 1.6750451226370119),
    (0.7, 2.5, 0.3, 1.5, 22.744890260962728),
    (-0.4, 3.0, 1.0, -2.0, 0.63878253687681193),
    (2.0, 4.0, 0.0, -3.0, -12.546341228701714),
    (-0.5, 2.0, 0.0, -1.0, 0.18393972058572116),
    (-1 / 3, 3.0, 0.0, -2.0, 0.26064573067792072),
    (-0.5, 3.0, 0.0, 2.0, -1.8472640247326626),
    (-2 / 3, 5.0, 0.0, -5.0, 7.6474312030772493),
]


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("rho,delta,x,want", PHI_ORACLE)
def test_phi_series_oracle(rho, delta, x, want):
    assert rel(phi_series(rho, delta, x), want) < 1e-12


@pytest.mark.parametrize("rho,k,delta,x,want", PSI_ORACLE)
def test_psi11_series_oracle(rho, k, delta, x, want):
    p = WrightParams(rho, k, delta, x, allow_real_k=True)
    assert rel(psi11_series(p).to_float(), want) < 1e-11


def test_psi11_examples():
    assert rel(psi11_series(0.5, 1, 0.0, 2.0).to_float(), 0.5 * 2 * math.e ** 2) < 1e-14
    assert rel(psi11_series(0.7, 0, 0.0, 1.3).to_float(), math.exp(1.3)) < 1e-14
    assert psi11_series(0.5, 3, 0.0, 0.0).sign == 0


def test_normalized_table_values():
    v = psi11_normalized(0.5, 20, 0.0, 20.0)
    assert rel(v.to_float(), 1.3732920306418632e18) < 1e-12
    assert rel(psi11_normalized(0.5, 1, 0.0, 2.0).to_float(), 7.389056098930650) < 1e-14


def test_normalized_large_k_log_scaled():
    # the unnormalized value is far beyond double range
    v = psi11_series(1.5, 1000, 0.0, 10.0)
    assert v.log_abs > 709
    n = psi11_normalized(1.5, 1000, 0.0, 10.0)
    assert abs(n.log_abs - (v.log_abs - math.lgamma(1000))) < 1e-9
    with pytest.raises(NumericOverflowError):
        v.to_float()


def test_phi_simple():
    assert phi_series(0.3, 1.0, 0.0) == 1.0
    assert rel(phi_series(-0.5, 0.0, -2.0), 0.2075537487102973) < 1e-13
    assert rel(phi_series(1.0, 0.0, 1.0), 1.590636854637329) < 1e-13


def test_exact_zero_from_cancellation():
    # 1 + (1 + rho)/(rho x) = 0 at rho = -1/2, x = 1: the value is exactly 0
    assert psi11_series(-0.5, 2, 0.0, 1.0).sign == 0


def test_outcome_reports_precision():
    out = psi11_outcome(-0.5, 3, 0.0, -30.0)
    assert out.dps > 0 and out.condition > 1e3
    easy = psi11_outcome(0.5, 3, 0.0, 1.0)
    assert easy.dps == 0


def test_rising_and_lgamma_paths_agree():
    for x in (-4.0, 0.5, 6.0):
        a = psi11_series(0.4, 5, 0.0, x, path="rising")
        b = psi11_series(0.4, 5, 0.0, x, path="lgamma")
        assert a.rel_diff(b) < 1e-13


@pytest.mark.parametrize("kwargs", [
    dict(rho=-0.5, k=1.3, x=1.0),
    dict(rho=0.0, k=1, x=1.0),
    dict(rho=-1.2, k=1, x=1.0),
    dict(rho=0.5, k=-1, x=1.0),
    dict(rho=0.5, k=1, x=math.nan),
])
def test_wright_params_validation(kwargs):
    with pytest.raises(DomainError):
        WrightParams(**kwargs)


def test_phi_params_validation():
    with pytest.raises(DomainError):
        PhiParams(-1.0, 0.0, 1.0)
    assert PhiParams(-0.3, 0.0, 1.0).sigma == 0.3


def test_term_cap_env(monkeypatch):
    monkeypatch.setenv("WRIGHTLAB_MAX_TERMS", "5")
    with pytest.raises(ConvergenceError):
        phi_series(0.5, 0.0, 40.0)
    monkeypatch.delenv("WRIGHTLAB_MAX_TERMS")
    assert phi_series(0.5, 0.0, 3.0) > 0


def test_phi_lsr_huge():
    v = phi_series_lsr(0.5, 0.0, 1e4)
    assert v.sign == 1 and v.log_abs > 709


class TestLogScaled:
    def test_round_trip(self):
        for x in (3.5, -2e-300, 1e300):
            assert LogScaledReal.from_float(x).to_float() == pytest.approx(x, rel=1e-13)

    def test_arithmetic(self):
        a, b = LogScaledReal.from_float(-4.0), LogScaledReal.from_float(2.0)
        assert (a * b).to_float() == pytest.approx(-8.0)
        assert (a / b).to_float() == pytest.approx(-2.0)
        assert (-a).sign == 1

    def test_format(self):
        assert LogScaledReal(1, 1000 * math.log(10)).format(7) == "1.000000e+1000"
        assert LogScaledReal.from_float(-0.000123456789).format(9) == "-1.23456789e-04"
        assert LogScaledReal.zero().format(3) == "0.00e+00"

    def test_rel_diff_without_overflow(self):
        a = LogScaledReal(1, 2000.0)
        b = LogScaledReal(1, 2000.0 + 1e-6)
        assert a.rel_diff(b) == pytest.approx(1e-6, rel=1e-5)

    def test_accumulator(self):
        acc = LogSeriesAccumulator()
        for t in (1e300, -1e300, 2.0, 3.0):
            v = LogScaledReal.from_float(t)
            acc.add(v.sign, v.log_abs)
        total, cond = acc.result()
        assert total.to_float() == pytest.approx(5.0, rel=1e-12)
        assert cond > 1e299
