"""Exact alternative representations of 1Psi1 and phi.

The Stirling-polynomial form is computed in exact rational arithmetic, so it
serves as a cancellation-free oracle for the power series.  The remaining
forms reduce special parameter values to Bessel, Airy, Whittaker and 1F1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .logscale import LogScaledReal
from .specfun import (
    STIRLING_MAX,
    airy_ai,
    bessel,
    kummer_1f1,
    nearest_int,
    stirling_or_zero,
    whittaker_w,
)

_SQRT_PI = math.sqrt(math.pi)


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class HPolynomial:
    """h_{k-1}(u) = sum_n D_n u^n, the polynomial factor of 1Psi1 for integer k."""

    rho: float
    k: int
    coeffs: tuple[float, ...]
    exact: tuple[Fraction, ...]

    def __call__(self, u) -> float:
        return math.fsum(c * u ** n for n, c in enumerate(self.coeffs))

    def exact_value(self, u: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.exact):
            acc = acc * u + c
        return acc


def d_coeffs(rho, k: int) -> HPolynomial:
    """Coefficients D_0..D_{k-1} from exact Stirling numbers.

    ``rho`` may be a float (taken at its exact binary value) or a Fraction.
    """
    kk = nearest_int(float(k))
    if kk is None or kk < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if kk > STIRLING_MAX:
        raise DomainError(f"k={kk} exceeds the Stirling table bound {STIRLING_MAX}")
    if rho == 0:
        raise DomainError("rho must be non-zero")
    r = _as_fraction(rho)
    exact = []
    for n in range(kk):
        acc = Fraction(0)
        for l in range(n + 1):
            term = stirling_or_zero("first", kk, kk - l) * stirling_or_zero("second", kk - l, kk - n)
            if term:
                acc += (-1) ** l * r ** (n - l) * term
        exact.append(acc)
    return HPolynomial(float(rho), kk, tuple(float(c) for c in exact), tuple(exact))


def d_coeffs_real_k(rho: float, k: float) -> list[float]:
    """D_0..D_3 from their closed forms, valid for real k (binomials via falling products)."""
    def binom(j):
        out = 1.0
        for i in range(j):
            out *= (k - i) / (i + 1)
        return out

    a = 1 + rho
    return [
        1.0,
        a * binom(2),
        0.25 * a * binom(3) * (3 * k * a - 1 - 5 * rho),
        0.5 * a * binom(4) * (k * a + 2 * rho) * (k * a + 1 + 3 * rho),
    ]


def _log_abs_fraction(q: Fraction) -> float:
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def psi11_polynomial(rho, k: int, x: float) -> LogScaledReal:
    """(rho x)^k e^x h_{k-1}(1/(rho x)) for positive integer k and x != 0."""
    if x == 0:
        raise DomainError("polynomial form needs x != 0; the series gives 0 there")
    poly = d_coeffs(rho, k)
    rx = _as_fraction(rho) * Fraction(x)
    h = poly.exact_value(1 / rx)
    if h == 0:
        return LogScaledReal.zero()
    sign = (1 if rx > 0 or poly.k % 2 == 0 else -1) * (1 if h > 0 else -1)
    log_abs = poly.k * _log_abs_fraction(rx) + float(x) + _log_abs_fraction(h)
    return LogScaledReal(sign, log_abs)


def psi11_rho1(k: int, x: float) -> LogScaledReal:
    """1Psi1(1, k; 1, 0; x) = x k! 1F1(k+1; 2; x)."""
    kk = nearest_int(float(k))
    if kk is None or kk < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if x == 0:
        return LogScaledReal.zero()
    f = kummer_1f1(kk + 1, 2, x)
    return f * LogScaledReal(1, math.lgamma(kk + 1)) * LogScaledReal.from_float(x)


def psi11_half_integer_neg(k: int, x: float, sign: str = "+") -> float:
    """1Psi1(-1/2, k; -1/2, 0; +-x) for integer k >= 0 and 0 < x <= 60, via Bessel functions."""
    kk = nearest_int(float(k))
    if kk is None or kk < 0:
        raise DomainError(f"k must be a non-negative integer, got {k!r}")
    nu = kk - 0.5
    pref = (x / 2) ** (kk + 0.5)
    if sign == "+":
        return (-1) ** kk * _SQRT_PI * pref * (bessel("I", nu, x) + bessel("I", -nu, x))
    if sign == "-":
        return 2 / _SQRT_PI * pref * bessel("K", nu, x)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def psi11_nonint_k_neg_half(k: float, x: float, sign: str = "+") -> float:
    """1Psi1(-1/2, k; -1/2, 0; +-x) for k > 0 not a half-integer, x >= 0."""
    if k <= 0:
        raise DomainError("k must be positive")
    if abs(2 * k - round(2 * k)) < 1e-10:
        raise DomainError(f"k={k} is a half-integer; the function is undefined there")
    if x < 0:
        raise DomainError("x must be >= 0; choose the sign instead")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if x == 0:
        return 0.0
    v = _SQRT_PI / math.cos(math.pi * k) * (x / 2) ** (k + 0.5) * bessel("I", 0.5 - k, x)
    return v if sign == "+" else -v


CLOSED_RHOS = (1.0, -1 / 3, -0.5, -2 / 3)


def closed_rho_key(rho: float) -> float | None:
    for r in CLOSED_RHOS:
        if abs(rho - r) < 1e-12:
            return r
    return None


def phi_closed(rho: float, x: float) -> float:
    """phi(rho, 0; x) for rho in {1, -1/3, -1/2, -2/3} through classical functions."""
    r = closed_rho_key(rho)
    if r is None:
        raise DomainError(f"no closed form for rho={rho}; supported: 1, -1/3, -1/2, -2/3")
    if x == 0:
        return 0.0
    a = abs(x)
    if r == 1.0:
        s = math.sqrt(a)
        if x > 0:
            return s * bessel("I", 1, 2 * s)
        return -s * bessel("J", 1, 2 * s)
    if r == -0.5:
        return -x * math.exp(-x * x / 4) / (2 * _SQRT_PI)
    if r == -1 / 3:
        c = 3.0 ** (-1.0 / 3.0)
        # phi(-1/3, 0; y) = -c y Ai(-c y)
        return -c * x * airy_ai(-c * x)
    z = 4 * a ** 3 / 27
    if x > 0:
        return -math.exp(2 * a ** 3 / 27) * whittaker_w(-0.5, 1 / 6, z) / (2 * math.sqrt(3 * math.pi))
    return math.sqrt(3 / math.pi) * math.exp(-2 * a ** 3 / 27) * whittaker_w(0.5, 1 / 6, z)
