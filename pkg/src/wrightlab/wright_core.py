"""Convergent power series for the Wright function 1Psi1 and the reduced
Wright function phi.

Terms are carried in log space so results far outside double range survive.
When the double-precision sum is ill-conditioned (alternating terms much
larger than the result) the sum is redone with mpmath at a working precision
sized from the measured cancellation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import ConvergenceError, DomainError
from .logscale import LogScaledReal, LogSeriesAccumulator
from .specfun import (
    EPS,
    is_nonpos_int,
    log_rising_product,
    max_terms,
    nearest_int,
)

# cancellation (sum|t| / |sum t|) above which the double result is not trusted
COND_LIMIT = 1e3
MAX_DPS = 4000


@dataclass(frozen=True)
class WrightParams:
    """Arguments of 1Psi1(rho, k; rho, delta; x)."""

    rho: float
    k: float
    delta: float = 0.0
    x: float = 0.0
    allow_real_k: bool = False

    def __post_init__(self):
        for name in ("rho", "k", "delta", "x"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        _check_rho(self.rho)
        if self.k < 0:
            raise DomainError(f"k must be >= 0, got {self.k}")
        if self.rho < 0 and nearest_int(self.k) is None and not self.allow_real_k:
            raise DomainError("negative rho requires a non-negative integer k")

    @property
    def k_int(self) -> int | None:
        return nearest_int(self.k)


@dataclass(frozen=True)
class PhiParams:
    """Arguments of phi(rho, delta; x)."""

    rho: float
    delta: float = 0.0
    x: float = 0.0

    def __post_init__(self):
        for name in ("rho", "delta", "x"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        _check_rho(self.rho)

    @property
    def sigma(self) -> float:
        return -self.rho


def _check_rho(rho: float) -> None:
    if rho == 0 or rho <= -1:
        raise DomainError(f"rho must lie in (-1, 0) or (0, inf), got {rho}")


@dataclass(frozen=True)
class SeriesOutcome:
    value: LogScaledReal
    terms: int
    condition: float
    dps: int  # 0 when double precision sufficed


# -- term kernels ----------------------------------------------------------

class _Ratio:
    """Gamma(k + rho n) / Gamma(rho n + delta) in log form; k=None gives 1/Gamma(rho n + delta)."""

    def __init__(self, rho, k, delta, path="auto"):
        self.rho, self.k, self.delta = rho, k, delta
        self.m = None
        if k is not None:
            m = nearest_int(k - delta)
            if path == "rising" and (m is None or m < 0):
                raise DomainError("rising-product path needs k - delta a non-negative integer")
            if path in ("auto", "rising") and m is not None and m >= 0:
                self.m = m

    def __call__(self, n: int) -> tuple[int, float]:
        z = self.rho * n + self.delta
        zi = nearest_int(z)
        if zi is not None:
            z = float(zi)
        if self.m is not None:
            return log_rising_product(z, self.m)
        if self.k is None:
            if is_nonpos_int(z):
                return 0, -math.inf
            return _gsign(z), -math.lgamma(z)
        num = self.k + self.rho * n
        if is_nonpos_int(num):
            if is_nonpos_int(z):
                raise DomainError(
                    f"gamma ratio 0/0 at n={n} needs the rising-product path")
            raise DomainError(f"numerator gamma pole at n={n} (k + rho n = {num})")
        if is_nonpos_int(z):
            return 0, -math.inf
        return _gsign(num) * _gsign(z), math.lgamma(num) - math.lgamma(z)


def _gsign(z: float) -> int:
    if z > 0:
        return 1
    return 1 if math.floor(z) % 2 == 0 else -1


def _sum_double(ratio: _Ratio, x: float) -> SeriesOutcome:
    if x == 0.0:
        s, l = ratio(0)
        return SeriesOutcome(LogScaledReal(s, l if s else -math.inf), 1, 1.0, 0)
    acc = LogSeriesAccumulator()
    lx = math.log(abs(x))
    neg = x < 0
    logfact = 0.0
    small = 0
    log_eps = math.log(EPS)
    cap = max_terms()
    for n in range(cap):
        if n:
            logfact += math.log(n)
        s, l = ratio(n)
        if s == 0:
            continue
        if neg and n % 2:
            s = -s
        lt = l + n * lx - logfact
        acc.add(s, lt)
        if n > 2 and lt < acc.running_log_abs() + log_eps and lt < acc.max_log + log_eps:
            small += 1
            if small >= 3:
                val, cond = acc.result()
                return SeriesOutcome(val, n + 1, cond, 0)
        else:
            small = 0
    raise ConvergenceError(
        f"series did not converge in {cap} terms (x={x}); set WRIGHTLAB_MAX_TERMS to raise the cap")


def _mp_exact(v: float):
    """Promote a float to mpmath, recovering small rationals exactly."""
    fr = Fraction(v).limit_denominator(1000)
    if float(fr) == v:
        return mpmath.mpf(fr.numerator) / fr.denominator
    return mpmath.mpf(v)


def _sum_mp_once(rho, k, delta, x, dps: int):
    with mpmath.workdps(dps):
        r = _mp_exact(rho)
        d = _mp_exact(delta)
        xm = mpmath.mpf(x)
        kk = None if k is None else _mp_exact(k)
        m = None
        if k is not None:
            mi = nearest_int(k - delta)
            if mi is not None and mi >= 0:
                m = mi
        tol = mpmath.mpf(10) ** (-dps)
        total = mpmath.mpf(0)
        absum = mpmath.mpf(0)
        biggest = mpmath.mpf(0)
        pw = mpmath.mpf(1)  # x^n / n!
        small = 0
        cap = max_terms()
        # rational rho = p/q: 1/Gamma(z + p) = 1/(Gamma(z) (z)_p) steps n -> n + q cheaply
        step = None
        if kk is None:
            fr = Fraction(rho).limit_denominator(64)
            if float(fr) == rho and 0 < fr.numerator <= 16:
                step = (fr.denominator, fr.numerator)
        prev_rg = {}
        for n in range(cap):
            if n:
                pw = pw * xm / n
            z = r * n + d
            if kk is None:
                c = None
                if step is not None and n >= step[0]:
                    b = prev_rg.get(n - step[0])
                    if b:
                        c = b
                        for j in range(step[1]):
                            c = c / (z - step[1] + j)
                if c is None:
                    c = mpmath.rgamma(z)
                if step is not None:
                    prev_rg[n] = c
                    prev_rg.pop(n - step[0], None)
            elif m is not None:
                c = mpmath.rf(z, m)
            else:
                c = mpmath.gamma(kk + r * n) * mpmath.rgamma(z)
            t = c * pw
            if t == 0:
                continue
            total += t
            at = abs(t)
            absum += at
            if at > biggest:
                biggest = at
            if n > 2 and at < tol * abs(total) and at < tol * biggest:
                small += 1
                if small >= 3:
                    return total, absum, n + 1
            else:
                small = 0
        raise ConvergenceError(f"high-precision series did not converge in {cap} terms")


def _rational(v: float, max_den: int = 64) -> Fraction | None:
    fr = Fraction(v).limit_denominator(max_den)
    return fr if float(fr) == v else None


def _phi_fixed_once(rf: Fraction, df: Fraction, x: float, bits: int):
    """phi series for rational rho, delta in fixed point on Python integers.

    Every term is an integer scaled by 2^F and is stepped n -> n + q by an
    exact rational factor, so each costs a few big-integer operations.
    Returns (total, absum, F, terms).
    """
    q, p = rf.denominator, abs(rf.numerator)
    Q = q * df.denominator // math.gcd(q, df.denominator)
    P = rf.numerator * (Q // q)  # rho = P/Q, delta = D/Q
    D = df.numerator * (Q // df.denominator)
    # magnitude scan in doubles: where the terms peak and where they die out
    lx = math.log(abs(x))
    peak, n, below = -math.inf, 0, 0
    n_peak, lo = 0, None
    cap = max_terms()
    while n < cap:
        z = (P * n + D) / Q
        if is_nonpos_int(z):
            n += 1
            continue
        # 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi on the negative side
        lt = n * lx - math.lgamma(n + 1) - math.lgamma(z) if z > 0 else (
            n * lx - math.lgamma(n + 1) + math.lgamma(1 - z)
            + math.log(max(abs(math.sin(math.pi * z)), 1e-300) / math.pi))
        if lt > peak:
            peak, n_peak = lt, n
        if n_peak == n or lo is None:
            lo = lt if lo is None else min(lo, lt)
        if n > 2 and lt < peak - bits * math.log(2) - 10:
            below += 1
            if below >= 3:
                break
        else:
            below = 0
        n += 1
    else:
        raise ConvergenceError(f"high-precision series did not converge in {cap} terms")
    n_end = n + 1
    # a unit of rounding in an early term t_j becomes relative error 1/t_j that
    # the growth to the peak carries along: anchor the scale to the smallest
    # term before the peak; ``bits`` then covers the cancellation peak/result
    F = bits - int(math.floor(min(lo, peak) / math.log(2)))
    m, e = math.frexp(x)
    xm, xe = int(m * (1 << 53)), e - 53  # x = xm * 2^xe exactly
    xqm, xqe = xm ** q, xe * q
    work = max(F + 64, 64) + 64

    def direct(n):
        with mpmath.workprec(work):
            v = mpmath.ldexp(mpmath.mpf(xm), xe) ** n / mpmath.factorial(n)
            v *= mpmath.rgamma(mpmath.mpf(P * n + D) / Q)
            return int(mpmath.ldexp(v, F))

    # terms are stepped n-q -> n within each residue class, so every stored
    # integer stays below the peak term and nothing underflows on the way
    prev = {}
    total = absum = 0
    for n in range(n_end):
        if n < q:
            t = direct(n)
        else:
            t0 = prev.pop(n - q)
            zN = P * (n - q) + D  # z_{n-q} = zN / Q
            if P > 0 and t0 == 0 and is_nonpos_int(zN / Q):
                t = direct(n)
            else:
                num, den = xqm, 1
                for i in range(n - q + 1, n + 1):
                    den *= i
                if P > 0:
                    num *= Q ** p
                    for i in range(p):
                        den *= zN + i * Q
                else:
                    for i in range(1, p + 1):
                        num *= zN - i * Q
                    den *= Q ** p
                t = t0 * num
                t = (t << xqe) if xqe >= 0 else (t >> -xqe)
                t //= den
        prev[n] = t
        total += t
        absum += abs(t)
    return total, absum, F, n_end


def _sum_fixed(rf: Fraction, df: Fraction, x: float, cond_hint: float) -> SeriesOutcome:
    bits = int(3.33 * (math.log10(max(cond_hint, 1.0)) + 24))
    noise = 0
    while True:
        if bits > 3.33 * MAX_DPS:
            raise ConvergenceError(f"cancellation needs more than {MAX_DPS} digits (x={x})")
        got = _phi_fixed_once(rf, df, x, bits)
        if got is None:
            return None
        total, absum, F, n = got
        lost = math.log2(absum) - math.log2(abs(total)) if total else math.inf
        if lost + 56 <= bits:
            lv = math.log(abs(total)) - F * math.log(2)
            return SeriesOutcome(LogScaledReal(1 if total > 0 else -1, lv), n,
                                 2.0 ** min(lost, 1000), int(bits / 3.33))
        if lost >= bits - 24:
            noise += bits >= 830
            if noise >= 2:
                return SeriesOutcome(LogScaledReal.zero(), n, math.inf, int(bits / 3.33))
            bits *= 2
            continue
        bits = int(lost + 80)


def _sum_mp(rho, k, delta, x, cond_hint: float) -> SeriesOutcome:
    if k is None:
        rf, df = _rational(rho), _rational(delta)
        if rf is not None and df is not None and rf.numerator != 0 and abs(rf.numerator) <= 64:
            out = _sum_fixed(rf, df, x, cond_hint)
            if out is not None:
                return out
    dps = int(max(30, math.log10(max(cond_hint, 1.0)) + 20))
    noise = 0
    while True:
        if dps > MAX_DPS:
            raise ConvergenceError(
                f"cancellation needs more than {MAX_DPS} digits (rho={rho}, x={x})")
        total, absum, n = _sum_mp_once(rho, k, delta, x, dps)
        with mpmath.workdps(dps):
            digits_lost = float(mpmath.log10(absum / abs(total))) if total else math.inf
        if digits_lost + 15 <= dps:
            with mpmath.workdps(dps):
                val = LogScaledReal(1 if total > 0 else -1, float(mpmath.log(abs(total))))
            return SeriesOutcome(val, n, 10.0 ** min(digits_lost, 300), dps)
        if digits_lost >= dps - 8:
            # nothing but rounding noise survives: twice at >= 250 digits means zero
            noise += dps >= 250
            if noise >= 2:
                return SeriesOutcome(LogScaledReal.zero(), n, math.inf, dps)
            dps *= 2
            continue
        dps = int(digits_lost + 25)


def _evaluate(rho, k, delta, x, path="auto") -> SeriesOutcome:
    out = _sum_double(_Ratio(rho, k, delta, path), x)
    if out.condition > COND_LIMIT:
        hint = out.condition if math.isfinite(out.condition) else 1e16
        return _sum_mp(rho, k, delta, x, hint)
    return out


# -- public API ------------------------------------------------------------

def _wp(p, args, kw) -> WrightParams:
    if isinstance(p, WrightParams):
        return p
    return WrightParams(p, *args, **kw)


def _pp(p, args, kw) -> PhiParams:
    if isinstance(p, PhiParams):
        return p
    return PhiParams(p, *args, **kw)


def psi11_series(p, *args, path: str = "auto", **kw) -> LogScaledReal:
    """1Psi1(rho, k; rho, delta; x) as a LogScaledReal.

    Accepts a WrightParams or the fields positionally: (rho, k, delta, x).
    ``path`` selects the gamma-ratio kernel: "rising", "lgamma" or "auto".
    """
    p = _wp(p, args, kw)
    return _evaluate(p.rho, p.k, p.delta, p.x, path).value


def psi11_outcome(p, *args, path: str = "auto", **kw) -> SeriesOutcome:
    """Like psi11_series but with term count, condition number and precision used."""
    p = _wp(p, args, kw)
    return _evaluate(p.rho, p.k, p.delta, p.x, path)


def psi11_normalized(p, *args, **kw) -> LogScaledReal:
    """1Psi1(rho, k; rho, delta; x) / Gamma(k), for k > 0."""
    p = _wp(p, args, kw)
    if p.k <= 0:
        raise DomainError("normalization by Gamma(k) needs k > 0")
    v = psi11_series(p)
    return LogScaledReal(v.sign, v.log_abs - math.lgamma(p.k) if v.sign else -math.inf)


def phi_series_lsr(p, *args, **kw) -> LogScaledReal:
    """phi(rho, delta; x) as a LogScaledReal."""
    p = _pp(p, args, kw)
    return _evaluate(p.rho, None, p.delta, p.x).value


def phi_series(p, *args, **kw) -> float:
    """phi(rho, delta; x) = sum_n x^n / (n! Gamma(rho n + delta)).

    Accepts a PhiParams or (rho, delta, x).
    """
    return phi_series_lsr(p, *args, **kw).to_float()


def phi_series_double(rho: float, delta: float, x: float) -> SeriesOutcome:
    """Double-precision pass only; the caller decides what condition it tolerates."""
    PhiParams(rho, delta, x)
    return _sum_double(_Ratio(rho, None, delta), x)
