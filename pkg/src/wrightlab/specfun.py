"""Classical special-function kernels used throughout the library.

Gamma values travel as (sign, log|.|) pairs so that magnitudes far beyond
double range can be combined safely.  Bessel functions come from
scipy.special; Whittaker W is assembled from confluent hypergeometric
pieces chosen by argument range.
"""
from __future__ import annotations

import math
import threading

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DomainError, RangeError, UnsupportedError
from .logscale import LogScaledReal, LogSeriesAccumulator

# relative tolerance for deciding that a float sits on an integer
INT_TOL = 1e-12
EPS = np.finfo(float).eps
MAX_TERMS_DEFAULT = 10_000


def max_terms() -> int:
    import os

    raw = os.environ.get("WRIGHTLAB_MAX_TERMS")
    return int(raw) if raw else MAX_TERMS_DEFAULT


def nearest_int(x: float) -> int | None:
    """Return round(x) if x is an integer up to INT_TOL, else None."""
    r = round(x)
    if abs(x - r) <= INT_TOL * max(1.0, abs(x)):
        return int(r)
    return None


def is_nonpos_int(x: float) -> bool:
    n = nearest_int(x)
    return n is not None and n <= 0


# -- gamma -----------------------------------------------------------------

def gamma_sign(x: float) -> int:
    if x > 0:
        return 1
    if is_nonpos_int(x):
        return 0
    return 1 if math.floor(x) % 2 == 0 else -1


def ln_gamma(x: float) -> float:
    """ln|Gamma(x)|; raises DomainError at poles."""
    if is_nonpos_int(x):
        raise DomainError(f"Gamma has a pole at x={x!r}")
    return math.lgamma(x)


def gamma_lsr(x: float) -> LogScaledReal:
    """Gamma(x) as a LogScaledReal."""
    return LogScaledReal(gamma_sign(x), ln_gamma(x))


def rgamma_lsr(x: float) -> LogScaledReal:
    """1/Gamma(x), exactly zero at the poles."""
    if is_nonpos_int(x):
        return LogScaledReal.zero()
    return LogScaledReal(gamma_sign(x), -math.lgamma(x))


def rgamma(x: float) -> float:
    return rgamma_lsr(x).to_float()


# -- rising products -------------------------------------------------------

def log_rising_product(z: float, k: int) -> tuple[int, float]:
    """(sign, log|.|) of z(z+1)...(z+k-1).  A vanishing factor gives sign 0."""
    if k < 0:
        raise DomainError("rising product needs k >= 0")
    if k == 0:
        return 1, 0.0
    if k < 24:
        sign, acc = 1, 0.0
        for j in range(k):
            f = z + j
            if f == 0.0 or (abs(f) <= INT_TOL * max(1.0, abs(z)) and nearest_int(z) is not None):
                return 0, -math.inf
            if f < 0:
                sign = -sign
            acc += math.log(abs(f))
        return sign, acc
    f = z + np.arange(k, dtype=float)
    near0 = np.abs(f) <= INT_TOL * max(1.0, abs(z))
    if np.any(f == 0.0) or (np.any(near0) and nearest_int(z) is not None):
        return 0, -math.inf
    neg = int(np.count_nonzero(f < 0))
    return (-1 if neg % 2 else 1), float(np.sum(np.log(np.abs(f))))


def rising_product(z: float, k: int) -> float:
    """z(z+1)...(z+k-1); equals Gamma(z+k)/Gamma(z) including its pole limits."""
    s, l = log_rising_product(z, k)
    return LogScaledReal(s, l).to_float()


# -- Stirling numbers ------------------------------------------------------

STIRLING_MAX = 64


class BigIntStirlingTable:
    """Exact triangular table of Stirling numbers, built once on first use."""

    def __init__(self, kind: str, max_index: int = STIRLING_MAX):
        if kind not in ("first_signed", "second"):
            raise ValueError(f"unknown Stirling kind {kind!r}")
        self.kind = kind
        self.max_index = max_index
        self._rows: list[list[int]] | None = None
        self._lock = threading.Lock()

    def _build(self) -> list[list[int]]:
        rows = [[1]]
        for n in range(self.max_index):
            prev = rows[-1] + [0]
            row = [0] * (n + 2)
            for m in range(1, n + 2):
                if self.kind == "first_signed":
                    row[m] = prev[m - 1] - n * prev[m]
                else:
                    row[m] = prev[m - 1] + m * prev[m]
            rows.append(row)
        return rows

    @property
    def rows(self) -> list[list[int]]:
        if self._rows is None:
            with self._lock:
                if self._rows is None:
                    self._rows = self._build()
        return self._rows

    def __call__(self, n: int, m: int) -> int:
        if not (0 <= n <= self.max_index) or m < 0:
            raise RangeError(f"Stirling index ({n}, {m}) outside 0..{self.max_index}")
        if m > n:
            return 0
        return self.rows[n][m]


_FIRST = BigIntStirlingTable("first_signed")
_SECOND = BigIntStirlingTable("second")


def stirling(kind: str, n: int, m: int) -> int:
    """Signed Stirling number of the first kind or Stirling number of the second kind."""
    if m > n:
        raise RangeError(f"Stirling index m={m} exceeds n={n}")
    if kind in ("first", "first_signed", 1):
        return _FIRST(n, m)
    if kind in ("second", 2):
        return _SECOND(n, m)
    raise ValueError(f"unknown Stirling kind {kind!r}")


def stirling_or_zero(kind: str, n: int, m: int) -> int:
    """Like stirling() but returns 0 outside 0 <= m <= n."""
    if m < 0 or m > n:
        return 0
    return stirling(kind, n, m)


# -- confluent hypergeometric ----------------------------------------------

def _kummer_series(a: float, b: float, x: float) -> tuple[LogScaledReal, float]:
    acc = LogSeriesAccumulator()
    acc.add(1, 0.0)
    sign, logt = 1, 0.0
    small = 0
    cap = max_terms()
    for n in range(cap):
        num = (a + n) * x
        if num == 0.0:
            return acc.result()
        den = (b + n) * (n + 1)
        if num < 0:
            sign = -sign
        if den < 0:
            sign = -sign
        logt += math.log(abs(num)) - math.log(abs(den))
        acc.add(sign, logt)
        run = acc.running_log_abs()
        if logt < run + math.log(EPS) and logt < acc.max_log + math.log(EPS):
            small += 1
            if small >= 3:
                return acc.result()
        else:
            small = 0
    raise ConvergenceError(f"1F1({a}; {b}; {x}) did not converge in {cap} terms")


def kummer_1f1(a: float, b: float, x: float) -> LogScaledReal:
    """1F1(a; b; x) by its Maclaurin series; Kummer's transform when x < 0."""
    if is_nonpos_int(b):
        raise DomainError(f"1F1 undefined for b={b!r} (non-positive integer)")
    if abs(x) > 700:
        raise RangeError(f"|x|={abs(x)} exceeds the supported bound 700")
    val, cond = _kummer_series(a, b, x)
    if x < 0 and cond > 10.0:
        alt, cond2 = _kummer_series(b - a, b, -x)
        if cond2 < cond:
            val = alt * LogScaledReal(1, x)
    return val


# -- Bessel and Airy -------------------------------------------------------

_BESSEL = {"I": special.iv, "J": special.jv, "K": special.kv}


def _bessel_raw(kind: str, nu: float, x: float) -> float:
    try:
        fn = _BESSEL[kind.upper()]
    except KeyError:
        raise ValueError(f"unknown Bessel kind {kind!r}") from None
    return float(fn(nu, x))


def bessel(kind: str, nu: float, x: float) -> float:
    """Bessel J_nu, modified I_nu or Macdonald K_nu at 0 < x <= 60."""
    if not x > 0:
        raise DomainError(f"Bessel argument must be positive, got {x!r}")
    if x > 60:
        raise RangeError(f"Bessel argument {x} beyond supported range (0, 60]")
    return _bessel_raw(kind, nu, x)


def airy_ai(x: float) -> float:
    """Ai(x) for |x| <= 30 through the Bessel connection formulas."""
    if abs(x) > 30:
        raise RangeError(f"Airy argument {x} beyond supported range [-30, 30]")
    if x == 0.0:
        return 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    zeta = 2.0 / 3.0 * abs(x) ** 1.5
    if x > 0:
        return math.sqrt(x / 3.0) * _bessel_raw("K", 1 / 3, zeta) / math.pi
    r = math.sqrt(-x)
    return r / 3.0 * (_bessel_raw("J", 1 / 3, zeta) + _bessel_raw("J", -1 / 3, zeta))


# -- Whittaker W -----------------------------------------------------------

_W_SMALL = 2.0
_W_LARGE = 40.0


def _whittaker_c2(kappa: float, mu: float, z: float) -> float:
    """Two-1F1 combination; fine for small z, cancels badly for large z."""
    tot = 0.0
    for m in (mu, -mu):
        a = 0.5 + m - kappa
        pref = gamma_lsr(-2 * m) * rgamma_lsr(0.5 - m - kappa)
        if pref.sign == 0:
            continue
        f = kummer_1f1(a, 1 + 2 * m, z)
        tot += (pref * f).to_float() * z ** (0.5 + m)
    return math.exp(-z / 2) * tot


def _whittaker_asym(kappa: float, mu: float, z: float) -> tuple[float, float]:
    """Large-z expansion; returns (value, size of smallest term) before scaling."""
    s, t, best = 1.0, 1.0, math.inf
    for n in range(200):
        t *= -(0.5 + mu - kappa + n) * (0.5 - mu - kappa + n) / ((n + 1) * z)
        if abs(t) >= best:
            break
        best = abs(t)
        s += t
        if best < EPS * abs(s):
            break
    return math.exp(-z / 2) * z ** kappa * s, best


def _whittaker_laplace(kappa: float, mu: float, z: float) -> float:
    """Through Tricomi U and its Laplace integral; needs a = mu - kappa + 1/2 > 0."""
    a = mu - kappa + 0.5
    b = 1 + 2 * mu
    # t = v**(1/a) removes the t**(a-1) endpoint behaviour
    def f(v):
        t = v ** (1.0 / a)
        return math.exp(-z * t) * (1 + t) ** (b - a - 1)

    scale = 1.0 / z
    hi = (40.0 * scale) ** a
    pts = [hi * q for q in (1e-3, 1e-2, 0.1, 0.3)]
    val, _ = integrate.quad(f, 0.0, hi, points=pts, epsabs=0.0, epsrel=1e-13, limit=200)
    u = val / (a * math.gamma(a))
    return math.exp(-z / 2) * z ** (mu + 0.5) * u


def whittaker_w(kappa: float, mu: float, z: float) -> float:
    """W_{kappa,mu}(z) for z > 0 with 2*mu non-integer."""
    if not z > 0:
        raise DomainError(f"Whittaker W needs z > 0, got {z!r}")
    if z > 700:
        raise RangeError(f"Whittaker argument {z} beyond 700")
    if nearest_int(2 * mu) is not None:
        raise UnsupportedError("Whittaker W with integer 2*mu is not supported")
    mu = abs(mu)
    if z <= _W_SMALL:
        return _whittaker_c2(kappa, mu, z)
    if z > _W_LARGE:
        return _whittaker_asym(kappa, mu, z)[0]
    if mu - kappa + 0.5 > 0:
        return _whittaker_laplace(kappa, mu, z)
    # a <= 0: fall back on the expansion if it is accurate enough, else C.2
    val, err = _whittaker_asym(kappa, mu, z)
    if err < 1e-12:
        return val
    return _whittaker_c2(kappa, mu, z)
