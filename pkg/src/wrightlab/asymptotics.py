"""Asymptotic approximations of 1Psi1 and phi, and the coefficient
sequences they use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .closed_forms import d_coeffs_real_k, psi11_polynomial
from .errors import ConvergenceError, DomainError, RangeError
from .logscale import LogScaledReal
from .report import MethodReport
from .specfun import nearest_int, rgamma, stirling_or_zero
from .wright_core import phi_series_lsr, psi11_series

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CoeffTable:
    name: str
    values: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = None
    params: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, j):
        return self.values[j]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class AsymptoticFrame:
    """kappa, h, vartheta of a Wright-type series plus the scaled variable X."""

    kappa: float
    h: float
    vartheta: float
    X: float
    A0prime: float = math.nan

    @classmethod
    def for_psi11(cls, k: float, x: float) -> "AsymptoticFrame":
        return cls(1.0, 1.0, k, x)

    @classmethod
    def for_phi(cls, rho: float, x: float) -> "AsymptoticFrame":
        kappa = 1.0 + rho
        h = rho ** (-rho)
        return cls(kappa, h, 0.0, kappa * (h * abs(x)) ** (1.0 / kappa))

    @classmethod
    def for_F(cls, sigma: float, x: float) -> "AsymptoticFrame":
        """Frame of F(z) = sum Gamma(1 + sigma n) z^n / n!."""
        kappa = 1.0 - sigma
        h = sigma ** sigma
        return cls(kappa, h, 0.5, kappa * (h * abs(x)) ** (1.0 / kappa),
                   math.sqrt(_TWO_PI * sigma) / kappa)


# -- exact and large-rho forms for integer k --------------------------------

def psi11_exact_expansion(rho, k: int, x: float) -> LogScaledReal:
    """Finite expansion (rho x)^k e^x sum D_n (rho x)^-n; exact for integer k."""
    return psi11_polynomial(rho, k, x)


def psi11_large_rho(rho: float, k: int, x: float, order: int = 1) -> LogScaledReal:
    """Leading (order 0) or first-corrected (order 1) form as rho -> infinity."""
    kk = nearest_int(float(k))
    if kk is None or kk < 1:
        raise DomainError("k must be a positive integer")
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1")
    corr = kk * (kk - 1) / (2.0 * rho) if order else 0.0
    total = math.fsum(
        x ** (kk - n) * (stirling_or_zero("second", kk, kk - n)
                         + corr * stirling_or_zero("second", kk - 1, kk - n))
        for n in range(kk))
    return LogScaledReal.from_float(total) * LogScaledReal(1 if rho > 0 else (-1) ** kk,
                                                           kk * math.log(abs(rho)) + x)


# -- algebraic expansion for non-integer k ----------------------------------

def _algebraic_parts(rho, k, x, n_terms):
    y = -x
    terms = []
    for s in range(n_terms + 1):
        a = (s + k) / rho
        r = rgamma(-s - k)
        if r == 0.0:
            terms.append(0.0)
            continue
        lt = math.lgamma(a) - math.lgamma(s + 1) - a * math.log(y)
        terms.append((-1) ** s * math.exp(lt) * r / rho)
    alg = math.fsum(terms[:n_terms])
    nxt = abs(terms[n_terms])
    # x^(k-j) on the negative axis: mean of the two continuations
    d = d_coeffs_real_k(rho, k)
    expo = math.fsum(
        rho ** (k - j) * d[j] * y ** (k - j) * math.cos(math.pi * (k - j)) * math.exp(x)
        for j in range(4))
    return alg + expo, nxt


def psi11_algebraic_expansion(rho: float, k: float, x: float, n_terms: int = 4) -> float:
    """Large negative-x expansion of 1Psi1(rho, k; rho, 0; x) for rho > 0 and non-integer k."""
    if rho <= 0:
        raise DomainError("algebraic expansion needs rho > 0")
    if x >= 0:
        raise DomainError("algebraic expansion needs x < 0")
    if k <= 0:
        raise DomainError("k must be positive")
    if nearest_int(k) is not None:
        raise DomainError("integer k: the algebraic part vanishes; use psi11_exact_expansion")
    if not 1 <= n_terms <= 20:
        raise RangeError("n_terms must lie in 1..20")
    return _algebraic_parts(rho, k, x, n_terms)[0]


def psi11_algebraic_report(rho, k, x, n_terms=4) -> MethodReport:
    psi11_algebraic_expansion(rho, k, x, n_terms)  # validation
    val, nxt = _algebraic_parts(rho, k, x, n_terms)
    return MethodReport("algebraic", LogScaledReal.from_float(val), nxt)


# -- saddle points -----------------------------------------------------------

@dataclass(frozen=True)
class SaddleResult:
    t_s: float
    psi_value: float
    psi_dd: float
    residual: float
    iterations: int


def _b_values(r):
    a = 1 + r
    return [
        r ** 0,
        1 / a,
        r / (2 * a ** 2),
        r * (r - 1) / (3 * a ** 3),
        r * (2 - 5 * r + 2 * r ** 2) / (8 * a ** 4),
        r * (-3 + 13 * r - 13 * r ** 2 + 3 * r ** 3) / (15 * a ** 5),
        r * (24 - 154 * r + 269 * r ** 2 - 154 * r ** 3 + 24 * r ** 4) / (144 * a ** 6),
    ]


def b_coeffs(rho, n_terms: int = 7) -> CoeffTable:
    """Coefficients B_r of the large-chi expansion t_s0 = chi sum B_r chi^-r.

    A Fraction rho also fills ``exact``.
    """
    if not 1 <= n_terms <= 7:
        raise RangeError("b_coeffs provides at most 7 terms (B_0..B_6)")
    if rho <= -1 or rho == 0:
        raise DomainError("rho must lie in (-1, 0) or (0, inf)")
    exact = None
    if isinstance(rho, Fraction):
        exact = tuple(_b_values(rho)[:n_terms])
    vals = _b_values(float(rho))
    return CoeffTable("B", tuple(vals[:n_terms]), exact, params={"rho": float(rho)})


def solve_saddle(rho: float, u: float, max_iter: int = 100) -> SaddleResult:
    """Root t > 1 of t^rho (t - 1) = 1/(|rho| u), with phase value and curvature.

    Newton runs on l = ln(t - 1), where the equation reads
    l + rho*log1p(e^l) = -ln(|rho| u) and the derivative stays in (1 + min(rho, 0), 1 + max(rho, 0)).
    """
    if rho == 0 or rho <= -1:
        raise DomainError("rho must lie in (-1, 0) or (0, inf)")
    if not u > 0:
        raise DomainError("u must be positive")
    c = 1.0 / (abs(rho) * u)
    target = math.log(c)
    if rho > 0:
        chi = c ** (1.0 / (1.0 + rho))
        t0 = chi * math.fsum(bj * chi ** (-j) for j, bj in enumerate(b_coeffs(rho).values))
    else:
        t0 = 1.0 + c
    l = math.log(t0 - 1.0) if t0 > 1.0 and math.isfinite(t0) else target

    def f(v):
        return v + rho * _log1pexp(v) - target

    # f is increasing; bracket the root for the bisection fallback
    lo, hi = target - 1.0, target + 1.0
    while f(lo) > 0:
        lo -= 2.0 * (hi - lo)
    while f(hi) < 0:
        hi += 2.0 * (hi - lo)
    if not lo <= l <= hi:
        l = 0.5 * (lo + hi)
    for it in range(1, max_iter + 1):
        fv = f(l)
        if fv > 0:
            hi = l
        elif fv < 0:
            lo = l
        else:
            break
        e = _logistic(l)
        step = fv / (1.0 + rho * e)
        nl = l - step
        if abs(step) <= 1e-15 * max(1.0, abs(l)):
            l = nl
            break
        if not lo <= nl <= hi:
            nl = 0.5 * (lo + hi)
        l = nl
    else:
        raise ConvergenceError(f"saddle iteration did not converge for rho={rho}, u={u}")
    w = math.exp(l)
    t = 1.0 + w
    base = math.log1p(1.0 / w)
    psi = base + 1.0 / (rho * w)
    psi_dd = (1.0 + rho) * (t - rho / (1.0 + rho)) / (t * t * w * w)
    residual = abs(math.exp(rho * math.log1p(w)) * w - c)
    return SaddleResult(t, psi, psi_dd, residual, it)


def _log1pexp(v: float) -> float:
    return v + math.log1p(math.exp(-v)) if v > 0 else math.log1p(math.exp(v))


def _logistic(v: float) -> float:
    if v >= 0:
        return 1.0 / (1.0 + math.exp(-v))
    e = math.exp(v)
    return e / (1.0 + e)


def psi11_saddle_approx(rho: float, k: float, x: float) -> LogScaledReal:
    """Leading saddle-point approximation of 1Psi1(rho, k; rho, 0; x) for large k.

    rho > 0 needs x > 0; rho in (-1, 0) needs x < 0.  In both cases u = |x|/k.
    """
    if k <= 0:
        raise DomainError("k must be positive")
    if rho > 0 and not x > 0:
        raise DomainError("rho > 0 saddle approximation needs x > 0")
    if rho < 0 and not x < 0:
        raise DomainError("negative-rho saddle approximation needs x < 0")
    s = solve_saddle(rho, abs(x) / k)
    log_val = (math.lgamma(k) + 0.5 * math.log(k / (_TWO_PI * (1.0 + rho)))
               - 0.5 * math.log(s.t_s - rho / (1.0 + rho)) + k * s.psi_value)
    return LogScaledReal(1, log_val)


# -- large k with k/x large ---------------------------------------------------

def largek_phase_coeffs(rho: float) -> list[float]:
    a = 1.0 + rho
    return [a / rho, 0.5, (2 * rho - 1) / (6 * a), (3 * rho - 1) * (rho - 1) / (12 * a * a)]


def psi11_largek_smallx(rho: float, k: float, x: float, n_terms: int = 3) -> LogScaledReal:
    """Large-k approximation of 1Psi1(rho, k; rho, 0; x) when k/x is large.

    n_terms counts the terms kept in the phase series (1..4).
    """
    if rho <= 0 or not x > 0 or k <= 0:
        raise DomainError("needs rho > 0, x > 0, k > 0")
    if not 1 <= n_terms <= 4:
        raise RangeError("n_terms must lie in 1..4")
    a = 1.0 + rho
    chi = (k / (rho * x)) ** (1.0 / a)
    lead = math.exp((math.log(rho * x) + rho * math.log(k)) / a)
    coeffs = largek_phase_coeffs(rho)[:n_terms]
    phase = lead * math.fsum(c * chi ** (-j) for j, c in enumerate(coeffs))
    log_val = (math.lgamma(k) - 0.5 * math.log(_TWO_PI * a)
               + (math.log(rho * x) + rho * math.log(k)) / (2 * a) + phase)
    return LogScaledReal(1, log_val)


def psi11_rho1_largek(k: float, x: float) -> LogScaledReal:
    """rho = 1 specialization of the large-k, small-x approximation."""
    q = x / k
    log_val = (math.lgamma(k) - math.log(2 * math.sqrt(math.pi)) + 0.25 * math.log(k * x)
               + 2 * math.sqrt(k * x) * (1 + 0.25 * math.sqrt(q) + q / 24))
    return LogScaledReal(1, log_val)


def psi11_rho2_largek(k: float, x: float) -> LogScaledReal:
    """rho = 2 specialization of the large-k, small-x approximation."""
    q = (2 * x / k) ** (1.0 / 3.0)
    log_val = (math.lgamma(k) - 0.5 * math.log(6 * math.pi) + math.log(2 * k * k * x) / 6
               + 1.5 * k ** (2.0 / 3.0) * (2 * x) ** (1.0 / 3.0) * (1 + q / 3 + q * q / 9))
    return LogScaledReal(1, log_val)


# -- negative rho, large k, fixed x ---------------------------------------------

def psi11_negrho_largek(rho: float, k: float, x: float) -> float:
    """1Psi1(rho, k; rho, 0; x) / Gamma(k) for rho in (-1, 0), k large, x fixed."""
    if not -1 < rho < 0:
        raise DomainError("rho must lie in (-1, 0)")
    if k <= 0:
        raise DomainError("k must be positive")
    if x == 0:
        return 0.0
    if abs(rho + 0.5) < 1e-14:
        return -x / (2 * math.sqrt(math.pi * k)) * (1 + (0.375 - x * x / 4) / k)
    kr = k ** rho
    g = math.gamma(rho)
    brace = (1 + x * kr * g * rgamma(2 * rho) / 2 - rho * (1 - rho) / (2 * k)
             + x * x * kr * kr * g * rgamma(3 * rho) / 6)
    return x * kr / g * brace


# -- coefficients c_j -------------------------------------------------------------

def _wp(j: int, r: float) -> float:
    # integer literals only, so a Fraction r stays exact
    if j == 1:
        return -(r ** 0) / 3
    if j == 2:
        return (2 - 19 * r + 2 * r ** 2) / 9
    if j == 3:
        return (556 + 1628 * r - 9093 * r ** 2 + 1628 * r ** 3 + 556 * r ** 4) / 135
    return -(4568 - 226668 * r - 465702 * r ** 2 + 2013479 * r ** 3 - 465702 * r ** 4
             - 226668 * r ** 5 + 4568 * r ** 6) / 405


def _c_values(rho, n_terms):
    vals = [rho ** 0]
    pre = (2 * rho + 1) * (rho + 2)
    for j in range(1, n_terms):
        vals.append(pre / (8 ** j * rho ** j * math.factorial(j)) * _wp(j, rho))
    return vals


def c_coeffs(rho, n_terms: int = 5) -> CoeffTable:
    """c_0..c_{n-1} of the exponential expansions of phi (n_terms <= 5).

    A Fraction rho also fills ``exact``.
    """
    if rho == 0:
        raise DomainError("rho must be non-zero")
    if not 1 <= n_terms <= 5:
        raise RangeError("c_coeffs provides at most 5 terms (c_0..c_4)")
    exact = tuple(_c_values(rho, n_terms)) if isinstance(rho, Fraction) else None
    vals = [float(v) for v in _c_values(float(rho), n_terms)]
    return CoeffTable("c", tuple(vals), exact, params={"rho": float(rho)})


def c_neg_third(j: int) -> float:
    """c_j(-1/3) in closed form."""
    return math.exp(math.lgamma(3 * j + 0.5) - math.lgamma(j + 0.5)
                    - j * math.log(54.0) - math.lgamma(j + 1))


# -- phi asymptotics --------------------------------------------------------------

def phi_asym_pos_rho_report(rho: float, x: float, n_terms: int = 5) -> MethodReport:
    if rho <= 0:
        raise DomainError("rho must be positive")
    if x == 0:
        raise DomainError("x must be non-zero")
    fr = AsymptoticFrame.for_phi(rho, x)
    kap, X = fr.kappa, fr.X
    c = c_coeffs(rho, min(n_terms + 1, 5)).values
    amp_log = 0.5 * math.log(rho / (_TWO_PI * kap)) + math.log(fr.h * abs(x)) / (2 * kap)
    nxt = abs(c[n_terms]) * X ** (-n_terms) if n_terms < len(c) else math.nan
    if x > 0:
        s = math.fsum(c[j] * X ** (-j) for j in range(n_terms))
        val = LogScaledReal.from_float(s) * LogScaledReal(1, amp_log + X)
        return MethodReport("regime:pos-rho", val, nxt * abs(val.to_float(False) / s) if s else None,
                            "exp-large")
    th = math.pi / kap
    s = math.fsum(c[j] * X ** (-j) * math.cos(X * math.sin(th) + th / 2 - j * th)
                  for j in range(n_terms))
    scale = LogScaledReal(1, math.log(2.0) + amp_log + X * math.cos(th))
    val = LogScaledReal.from_float(s) * scale
    regime = "oscillatory" if abs(math.cos(th)) < 1e-15 else (
        "exp-decay" if math.cos(th) < 0 else "exp-large")
    return MethodReport("regime:pos-rho", val, nxt * scale.to_float(False), regime,
                        extra={"envelope": scale.to_float(False)})


def phi_asym_pos_rho(rho: float, x: float, n_terms: int = 5) -> float:
    """Exponential expansion of phi(rho, 0; x), rho > 0, for large |x|."""
    return phi_asym_pos_rho_report(rho, x, n_terms).value.to_float()


def phi_H_terms(sigma: float, x: float, n_terms: int) -> list[float]:
    """Terms of the algebraic expansion of phi(-sigma, 0; x) for x > 0."""
    out = []
    for k in range(n_terms):
        m = (k + 1) / sigma
        r = rgamma(1 - m)
        if r == 0.0:
            out.append(0.0)
            continue
        out.append(math.exp(-m * math.log(x) - math.lgamma(k + 1)) * r / sigma)
    return out


def _regime(sigma: float) -> str:
    if abs(sigma - 1 / 3) < 1e-12:
        return "oscillatory"
    if abs(sigma - 0.5) < 1e-12:
        return "gaussian-exact"
    if sigma < 1 / 3:
        return "exp-dominant"
    if sigma < 0.5:
        return "exp-subdominant"
    return "algebraic"


def phi_asym_neg_rho_pos_x(sigma: float, x: float, n_terms: int = 5) -> MethodReport:
    """Large-x form of phi(-sigma, 0; x), dispatched on the regime of sigma."""
    if not 0 < sigma < 1:
        raise DomainError("sigma must lie in (0, 1)")
    if not x > 0:
        raise DomainError("x must be positive")
    regime = _regime(sigma)
    label = "regime:" + regime
    if regime == "gaussian-exact":
        v = -x * math.exp(-x * x / 4) / (2 * math.sqrt(math.pi))
        return MethodReport(label, LogScaledReal.from_float(v), 0.0, regime)
    total, err = 0.0, 0.0
    if regime in ("exp-dominant", "exp-subdominant", "algebraic"):
        hs = phi_H_terms(sigma, x, n_terms + 8)
        total += math.fsum(hs[:n_terms])
        err += next((abs(h) for h in hs[n_terms:] if h != 0.0), 0.0)
    if regime != "algebraic":
        n_e = min(n_terms, 5)
        fr = AsymptoticFrame.for_F(sigma, x)
        kap, X = fr.kappa, fr.X
        if regime == "oscillatory":
            c = [c_neg_third(j) for j in range(n_e + 1)]
        else:
            c = list(c_coeffs(-sigma, 5).values) + [math.nan]
        a = math.pi * sigma / kap
        amp = fr.A0prime / math.pi * math.sqrt(X) * math.exp(X * math.cos(a))
        if regime == "oscillatory":
            amp = fr.A0prime / math.pi * math.sqrt(X)
        es = [c[j] * X ** (-j) * math.cos(X * math.sin(a) + math.pi / kap * (0.5 - sigma * j))
              for j in range(n_e)]
        total += amp * math.fsum(es)
        if math.isfinite(c[n_e]):
            err += amp * abs(c[n_e]) * X ** (-n_e)
        else:
            err += amp * abs(c[n_e - 1]) * X ** (1 - n_e)
    return MethodReport(label, LogScaledReal.from_float(total), err, regime)


def phi_asym_neg_rho_neg_x(sigma: float, x: float, n_terms: int = 5) -> float:
    """Exponentially small expansion of phi(-sigma, 0; -x) for large x > 0."""
    return phi_asym_neg_rho_neg_x_lsr(sigma, x, n_terms).to_float(strict=False)


def phi_asym_neg_rho_neg_x_lsr(sigma: float, x: float, n_terms: int = 5) -> LogScaledReal:
    if not 0 < sigma < 1:
        raise DomainError("sigma must lie in (0, 1)")
    if not x > 0:
        raise DomainError("x must be positive")
    if not 1 <= n_terms <= 5:
        raise RangeError("n_terms must lie in 1..5")
    fr = AsymptoticFrame.for_F(sigma, x)
    X = fr.X
    c = c_coeffs(-sigma, n_terms).values
    # alternating signs: matches the Airy and Whittaker closed forms
    s = math.fsum((-1) ** j * c[j] * X ** (-j) for j in range(n_terms))
    pre = LogScaledReal(1, math.log(fr.A0prime / _TWO_PI) + 0.5 * math.log(X) - X)
    return pre * LogScaledReal.from_float(s)


# -- large-k connection to phi ----------------------------------------------------

def theorem6_ratio(rho: float, k: float, x: float) -> float:
    """1Psi1(rho, k; rho, 0; x) / (Gamma(k) phi(rho, 0; x k^rho)); tends to 1 as k grows."""
    if rho > 0 and not x > 0:
        raise DomainError("for rho > 0 the connection needs x > 0")
    if k < 10:
        raise DomainError("the connection is a large-k statement; use k >= 10")
    num = psi11_series(rho, k, 0.0, x)
    den = phi_series_lsr(rho, 0.0, x * k ** rho)
    if den.sign == 0:
        raise RangeError("phi value vanished; ratio undefined")
    q = num / den
    return LogScaledReal(q.sign, q.log_abs - math.lgamma(k)).to_float()
