"""Real-axis integral representations of 1Psi1 and phi.

Each function evaluates one side of an identity by quadrature so that it can
be compared with the series or a closed form.  Integrands are pure closures;
nothing here keeps state between calls.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy import special

from .asymptotics import (
    AsymptoticFrame,
    phi_asym_neg_rho_pos_x,
    phi_asym_pos_rho_report,
    solve_saddle,
)
from .closed_forms import closed_rho_key, phi_closed
from .errors import AccuracyError, ConvergenceError, DomainError, RangeError
from .logscale import LogScaledReal
from .quadrature import QuadResult, quad_finite, quad_oscillatory_sum, quad_semi_infinite
from .specfun import nearest_int, whittaker_w
from .wright_core import phi_series, phi_series_double

_SQRT_PI = math.sqrt(math.pi)
_KERNEL_MP_PEAK = 300.0
_KERNEL_COND = 1e5  # cancellation tolerated in a double-precision kernel value
_UNDERFLOW_X = 800.0
_KERNEL_MAX_PEAK = 1500.0


# -- phi as an integrand ---------------------------------------------------------

def _phi_kernel(rho: float, y: float, delta: float = 0.0, cutoff_x: float = _UNDERFLOW_X) -> float:
    """phi(rho, delta; y) to near double accuracy, choosing the cheapest sound route.

    For rho < 0, y < 0 the value is of size exp(-X); beyond ``cutoff_x`` it is
    returned as 0.  Callers lower the cutoff when the rest of the integrand is
    bounded, so that the loss is far below their tolerance.
    """
    if y == 0.0:
        return 0.0 if delta == 0.0 else float(special.rgamma(delta))
    if delta == 0.0 and closed_rho_key(rho) is not None:
        try:
            return phi_closed(rho, y)
        except (RangeError, OverflowError):
            pass
    if rho < 0 and y < 0:
        # exponentially small side: below double range once X passes ~745
        if AsymptoticFrame.for_F(-rho, -y).X > cutoff_x:
            return 0.0
    # the largest series term sits near n = X / kappa; far out the sum is hopeless
    fr = AsymptoticFrame.for_F(-rho, y) if rho < 0 else AsymptoticFrame.for_phi(rho, y)
    if fr.X / fr.kappa < _KERNEL_MAX_PEAK:
        try:
            out = phi_series_double(rho, delta, y)
            if out.condition <= _KERNEL_COND:
                return out.value.to_float(strict=False)
        except ConvergenceError:
            pass
        if fr.X / fr.kappa < _KERNEL_MP_PEAK and not (rho < 0 and y < 0):
            return phi_series(rho, delta, y)
    if delta == 0.0:
        if rho < 0 and y < 0:
            return _mikusinski_value(-rho, -y)
        if rho > 0:
            reps = [phi_asym_pos_rho_report(rho, y, 4)]
        else:
            reps = [phi_asym_neg_rho_pos_x(-rho, y, n) for n in (10, 20, 30)]
        for rep in sorted(reps, key=lambda r: r.est_error if r.est_error is not None
                          and math.isfinite(r.est_error) else math.inf):
            v = rep.value.to_float(strict=False)
            # oscillatory values are judged against their envelope, not their zeros
            size = max(abs(v), rep.extra.get("envelope", 0.0))
            if rep.est_error is not None and rep.est_error <= 1e-10 * size:
                return v
            break
        if rho < 0:
            return phi_real_integral(-rho, y, "+", tol=1e-11).value
    return phi_series(rho, delta, y)


def _period_phi(rho: float, y: float) -> float:
    """Local oscillation length, in y, of phi(rho, 0; y) on its oscillatory side."""
    y = abs(y)
    if y == 0.0:
        return math.inf
    if rho > 0:
        fr = AsymptoticFrame.for_phi(rho, y)
        rate = fr.X * math.sin(math.pi / fr.kappa) / (fr.kappa * y)
    else:
        fr = AsymptoticFrame.for_F(-rho, y)
        rate = fr.X * math.sin(math.pi * -rho / fr.kappa) / (fr.kappa * y)
    return 2 * math.pi / rate if rate > 0 else math.inf


def _log_or_zero(v: float) -> tuple[int, float]:
    if v == 0.0:
        return 0, -math.inf
    return (1 if v > 0 else -1), math.log(abs(v))


def _sgn(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise DomainError(f"sign must be + or -, got {sign!r}")


def _check_sigma(sigma: float, name: str = "sigma"):
    if not 0 < sigma < 1:
        raise DomainError(f"{name} must lie in (0, 1), got {sigma}")


# -- (1.5): 1Psi1 as a gamma mixture of phi -------------------------------------

def mixing_relation_rhs(rho: float, k: float, x: float, tol: float = 1e-9) -> QuadResult:
    """int_0^inf e^-tau tau^(k-1) phi(rho, 0; eps x tau^rho) dtau, eps = sign(rho).

    Equals 1Psi1(rho, k; rho, 0; eps x).  x > 0; for rho < 0 k must be an integer.
    """
    if not x > 0:
        raise DomainError("x must be positive; the sign of rho fixes the argument's sign")
    if rho == 0 or rho <= -1:
        raise DomainError("rho must lie in (-1, 0) or (0, inf)")
    if k < 0:
        raise DomainError("k must be non-negative")
    if rho < 0 and nearest_int(k) is None:
        raise DomainError("for rho < 0 the relation holds only for integer k")
    eps = 1 if rho > 0 else -1

    def f(tau):
        y = eps * x * tau ** rho
        v = _phi_kernel(rho, y)
        if math.isfinite(v):
            s, l = _log_or_zero(v)
        else:
            # past double range for rho > 0; e^-tau still wins in the product
            big = phi_asym_pos_rho_report(rho, y, 4).value
            s, l = big.sign, big.log_abs
        if s == 0:
            return 0.0
        return s * math.exp(l - tau + (k - 1) * math.log(tau))

    return quad_semi_infinite(f, "exponential", tol, scale=max(1.0, k))


# -- rho = -1/3 and -2/3 through K_{1/3} and Whittaker W --------------

def theorem1_rhs(variant: str, k: int, x: float, tol: float = 1e-9) -> QuadResult:
    """1Psi1(-1/3, k; -1/3, 0; -x) ("1/3") or 1Psi1(-2/3, k; -2/3, 0; -x) ("2/3")."""
    if nearest_int(k) is None or k < 1:
        raise DomainError("k must be a positive integer")
    if not 0 < x <= 20 or k > 10:
        raise RangeError("supported range is 0 < x <= 20, k <= 10")
    if variant == "1/3":
        c = 2 * x ** 1.5 / (3 * math.sqrt(3.0))

        def f(t):
            z = c / math.sqrt(t)
            return math.exp(-t + (k - 1.5) * math.log(t) - z) * special.kve(1 / 3, z)

        return quad_semi_infinite(f, "exponential", tol, scale=float(k)).scaled(
            x ** 1.5 / (3 * math.pi))
    if variant == "2/3":
        c = 4 * x ** 3 / 27

        def f(t):
            z = c / (t * t)
            if z > 700:
                return 0.0
            return math.exp(-t + (k - 1) * math.log(t) - z / 2) * whittaker_w(0.5, 1 / 6, z)

        return quad_semi_infinite(f, "exponential", tol, scale=float(k)).scaled(
            math.sqrt(3 / math.pi))
    raise DomainError(f"variant must be '1/3' or '2/3', got {variant!r}")


# -- branch-cut and Mikusinski forms -----------------------------------------------

def phi_real_integral(sigma: float, x: float, sign="+", tol: float = 1e-10) -> QuadResult:
    """phi(-sigma, 0; +-x) from the integral along both sides of the branch cut.

    With t = x^(1/sigma) v the integral reads
    -+(1/pi) int_0^inf exp(-v +- x v^s cos(pi s)) sin(x v^s sin(pi s)) dv.
    """
    _check_sigma(sigma)
    if not x > 0:
        raise DomainError("x must be positive")
    sg = _sgn(sign)
    cs, sn = math.cos(math.pi * sigma), math.sin(math.pi * sigma)

    def f(v):
        vs = v ** sigma
        return math.exp(-v + sg * x * vs * cs) * math.sin(x * vs * sn)

    def period(v):
        return 2 * math.pi * v ** (1 - sigma) / (x * sigma * sn) if v > 0 else math.inf

    # a growing exponent is only beaten by exp(-v) beyond the crossover
    scale = max(1.0, (x * sg * cs) ** (1 / (1 - sigma))) if sg * cs > 0 else 1.0
    r = quad_semi_infinite(f, "exponential", tol, scale=scale, period=period)
    return r.scaled(-sg / math.pi)


def _zolotarev_w(sigma: float, p: float) -> float:
    if p <= 0.0:
        return sigma ** (sigma / (1 - sigma)) * (1 - sigma)
    s = math.sin(p)
    if s <= 0.0:
        return math.inf
    return (math.sin(sigma * p) / s) ** (sigma / (1 - sigma)) * math.sin((1 - sigma) * p) / s


def _mikusinski(sigma: float, x: float, tol: float, shifted: bool) -> tuple[QuadResult, float]:
    X = x ** (1 / (1 - sigma))
    w0 = _zolotarev_w(sigma, 0.0) if shifted else 0.0

    def f(p):
        w = _zolotarev_w(sigma, p)
        if not math.isfinite(w):
            return 0.0
        e = X * (w - w0)
        return w * math.exp(-e) if e < 745 else 0.0

    # the mass sits within ~1/sqrt(X) of the origin when X is large
    pts = [p for p in (3.0 / math.sqrt(X), 10.0 / math.sqrt(X)) if p < math.pi]
    r = quad_finite(f, 0.0, math.pi, tol, points=pts, positive=True)
    return r, math.log(sigma * X / (math.pi * (1 - sigma))) - X * w0


def phi_mikusinski(sigma: float, x: float, tol: float = 1e-10) -> QuadResult:
    """phi(-sigma, 0; -x), x > 0, as an integral of the Zolotarev function over (0, pi)."""
    _check_sigma(sigma)
    if not x > 0:
        raise DomainError("x must be positive")
    r, lpref = _mikusinski(sigma, x, tol, shifted=False)
    return r.scaled(math.exp(lpref))


def phi_mikusinski_lsr(sigma: float, x: float, tol: float = 1e-10) -> LogScaledReal:
    """Log-scaled variant: usable where phi(-sigma, 0; -x) underflows."""
    _check_sigma(sigma)
    if not x > 0:
        raise DomainError("x must be positive")
    r, lpref = _mikusinski(sigma, x, tol, shifted=True)
    if r.value <= 0:
        return LogScaledReal.zero()
    return LogScaledReal(1, lpref + math.log(r.value))


def _mikusinski_value(sigma: float, x: float) -> float:
    return phi_mikusinski_lsr(sigma, x, 1e-11).to_float(strict=False)


@dataclass(frozen=True)
class PositivityReport:
    sigma: float
    all_positive: bool
    points: int
    violations: list = field(default_factory=list)
    methods: dict = field(default_factory=dict)


def positivity_scan(sigma: float, x_grid) -> PositivityReport:
    """Check phi(-sigma, 0; -x) > 0 on a grid of x > 0.

    The series decides wherever it can be summed; where it cannot (the value
    sits far below the cancellation it would need) the log-scaled Mikusinski
    integral supplies the sign and magnitude.
    """
    _check_sigma(sigma)
    bad, methods = [], {"series": 0, "mikusinski": 0}
    n = 0
    for x in x_grid:
        if not x > 0:
            raise DomainError("grid points must be positive")
        n += 1
        try:
            v = phi_series(-sigma, 0.0, -x)
            methods["series"] += 1
            ok = v > 0
        except ConvergenceError:
            lv = phi_mikusinski_lsr(sigma, x)
            methods["mikusinski"] += 1
            ok = lv.sign > 0
            v = lv
        if not ok:
            bad.append((x, v))
    return PositivityReport(sigma, not bad, n, bad, methods)


# -- mixing over a Laplace kernel and two consequences ------------------------------

def halving_relation_rhs(sigma: float, x: float, tol: float = 1e-9) -> QuadResult:
    """(x / 2 sqrt(pi)) int_0^inf s^(-3/2) e^(-x^2/4s) phi(-sigma, 0; -s) ds = phi(-sigma/2, 0; -x)."""
    _check_sigma(sigma)
    if not 0 < x <= 20:
        raise RangeError("supported range is 0 < x <= 20")

    def f(s):
        v = _phi_kernel(-sigma, -s)
        if v == 0.0:
            return 0.0
        return v * math.exp(-x * x / (4 * s) - 1.5 * math.log(s))

    return quad_semi_infinite(f, "exponential", tol, scale=max(1.0, x * x / 6)).scaled(
        x / (2 * _SQRT_PI))


def derived_reps(which: str, x: float, tol: float = 1e-9) -> QuadResult:
    """phi(-1/4, 0; -x) ("quarter") or phi(-1/6, 0; -x) ("sixth") by single integrals.

    The quarter form uses the decaying exponent exp(-x^(4/3)(tau^4 + tau^-2)/4).
    """
    if not 0 < x <= 10:
        raise RangeError("supported range is 0 < x <= 10")
    if which == "quarter":
        a = 0.25 * x ** (4 / 3)

        def f(tau):
            return math.exp(-a * (tau ** 4 + tau ** -2))

        return quad_semi_infinite(f, "gaussian", tol).scaled(x ** (4 / 3) / (2 * math.pi))
    if which == "sixth":
        c = 2 / (3 * math.sqrt(3.0))

        def f(s):
            z = c * s ** 1.5
            return math.exp(-x * x / (4 * s) - z) * special.kve(1 / 3, z)

        return quad_semi_infinite(f, "exponential", tol, scale=max(1.0, x)).scaled(
            x / (6 * math.pi ** 1.5))
    raise DomainError(f"which must be 'quarter' or 'sixth', got {which!r}")


# -- transforms ---------------------------------------------------------------

def laplace_transform_lhs(variant: str, rho_or_sigma: float, delta: float, alpha: float,
                          z: float, sign="+", tol: float = 1e-9) -> QuadResult:
    """Laplace transforms in t of t^(delta-1) phi(.., delta; ..).

    "neg": int e^-zt t^(delta-1) phi(-sigma, delta; -alpha t^-sigma) dt = z^-delta exp(-alpha z^sigma).
    "pos": int e^-zt t^(delta-1) phi(rho, delta; +-alpha t^rho) dt = z^-delta exp(+-alpha z^-rho),
    less 1 when delta = 0.
    """
    if not (alpha > 0 and z > 0):
        raise DomainError("alpha and z must be positive")
    if variant == "neg":
        sigma = rho_or_sigma
        _check_sigma(sigma)
        rho, sg = -sigma, -1
    elif variant == "pos":
        rho = rho_or_sigma
        if not rho > 0:
            raise DomainError("rho must be positive")
        sg = _sgn(sign)
    else:
        raise DomainError(f"variant must be 'neg' or 'pos', got {variant!r}")
    if delta < 0:
        raise DomainError("delta must be non-negative")

    def f(t):
        # t^(delta-1) e^(-zt) grows at most algebraically, so exp(-60) is negligible
        v = _phi_kernel(rho, sg * alpha * t ** rho, delta, cutoff_x=60.0)
        if v == 0.0:
            return 0.0
        s, l = _log_or_zero(v)
        return s * math.exp(l - z * t + (delta - 1) * math.log(t))

    per = None
    if variant == "pos" and sg < 0 and delta == 0:
        def per(t):
            y = alpha * t ** rho
            return _period_phi(rho, y) * t / (rho * y)
    return quad_semi_infinite(f, "exponential", tol, scale=1 / z, period=per)


def laplace_transform_rhs(variant: str, rho_or_sigma: float, delta: float, alpha: float,
                          z: float, sign="+") -> float:
    if variant == "neg":
        return z ** -delta * math.exp(-alpha * z ** rho_or_sigma)
    e = math.exp(_sgn(sign) * alpha * z ** -rho_or_sigma)
    return e - 1 if delta == 0 else z ** -delta * e


def mellin_lhs(sigma: float, mu: float, x: float, tol: float = 1e-9) -> QuadResult:
    """int_0^inf t^(mu-1) phi(-sigma, 0; -t x^-sigma) dt = x^(sigma mu) Gamma(mu) / Gamma(sigma mu)."""
    _check_sigma(sigma)
    if not mu > -1 or mu == 0:
        raise DomainError("mu must exceed -1 and be non-zero")
    if not x > 0:
        raise DomainError("x must be positive")
    c = x ** -sigma

    def f(t):
        v = _phi_kernel(-sigma, -t * c)
        if v == 0.0:
            return 0.0
        return v * math.exp((mu - 1) * math.log(t))

    return quad_semi_infinite(f, "exponential", tol, scale=x ** sigma)


def mellin_rhs(sigma: float, mu: float, x: float) -> float:
    return x ** (sigma * mu) * math.gamma(mu) / math.gamma(sigma * mu)


def bilateral_exp_lhs(sigma: float, s: float, tol: float = 1e-8) -> QuadResult:
    """int_-inf^inf e^(st) t^-1 phi(-sigma, 0; -t) dt = exp(s^(1/sigma)) for sigma in [1/3, 1).

    At sigma = 1/3 the integrand is 3^(-1/3) Ai(3^(-1/3) t) e^(st).
    """
    if not 1 / 3 - 1e-12 <= sigma < 1:
        raise DomainError("the integral diverges unless 1/3 <= sigma < 1")
    if s < 0:
        raise DomainError("s must be non-negative")
    third = abs(sigma - 1 / 3) < 1e-12
    c = 3.0 ** (-1 / 3)

    if third:
        def pos(t):
            return c * special.airye(c * t)[0] * math.exp(s * t - 2 / 3 * (c * t) ** 1.5)

        def neg(u):
            return c * special.airy(-c * u)[0] * math.exp(-s * u)
    else:
        def pos(t):
            v = _phi_kernel(-sigma, -t)
            if v == 0.0:
                return 0.0
            return v / t * math.exp(s * t) if s * t < 700 else math.exp(math.log(v / t) + s * t)

        def neg(u):
            return -_phi_kernel(-sigma, u) / u * math.exp(-s * u)

    right = quad_semi_infinite(pos, "exponential", tol,
                               scale=max(1.0, s ** (1 / sigma / max(1 - sigma, 1e-3))))
    if third and s == 0:
        # Ai(-z) oscillates with amplitude z^(-1/4): sum between zeros and extrapolate
        zeros = special.ai_zeros(400)[0]
        left = quad_oscillatory_sum(
            neg, lambda j: 0.0 if j == 0 else -zeros[j - 1] / c, tol)
    elif sigma < 0.5 - 1e-12:
        per = (lambda u: _period_phi(-sigma, u)) if not third else (
            lambda u: 2 * math.pi / math.sqrt(max(c * u, 1e-300)) / c)
        if s > 0:
            left = quad_semi_infinite(neg, "exponential", tol, scale=1 / s, period=per)
        else:
            left = quad_semi_infinite(neg, ("algebraic", 1 + 1 / sigma), tol, period=per)
    elif s > 0:
        left = quad_semi_infinite(neg, "exponential", tol, scale=1 / s)
    elif abs(sigma - 0.5) < 1e-12:
        left = quad_semi_infinite(neg, "gaussian", tol)
    else:
        left = quad_semi_infinite(neg, ("algebraic", 1 + 1 / sigma), tol)
    return QuadResult(right.value + left.value, right.abs_err_estimate + left.abs_err_estimate,
                      right.evaluations + left.evaluations, max(right.truncation_point,
                                                                left.truncation_point))


# -- multiplication theorems and the reflection principle ---------------------------

def t4_admissible(rho1: float, rho2: float) -> bool:
    """Whether the product integral for phi(-rho1 rho2, 0; -x) converges."""
    if not (rho1 > 0 and rho2 > 0):
        return False
    if rho1 <= 1 and rho2 < 1:
        return True
    return rho1 < 1 and rho2 >= 1 and rho1 * rho2 < 1


def mult_theorem_rhs(form: str, params, x: float, sign="+", tol: float = 1e-8) -> QuadResult:
    """Product integrals int_0^inf phi * phi ds/s.

    T3 (sigma1, sigma2): phi(-sigma1, 0; -s) phi(-sigma2, 0; -x s^-sigma2) -> phi(-sigma1 sigma2, 0; -x)
    T4 (rho1, rho2):     phi(rho1, 0; -s) phi(rho2, 0; -x s^rho2)          -> phi(-rho1 rho2, 0; -x)
    T5 (sigma, rho):     phi(-sigma, 0; -s) phi(rho, 0; +-x s^rho)         -> phi(rho sigma, 0; +-x)
    """
    if not x > 0:
        raise DomainError("x must be positive")
    a, b = params
    if form == "T3":
        _check_sigma(a, "sigma1")
        _check_sigma(b, "sigma2")

        def f(s):
            u = _phi_kernel(-a, -s)
            return 0.0 if u == 0.0 else u * _phi_kernel(-b, -x * s ** -b) / s

        return quad_semi_infinite(f, "exponential", tol)
    if form == "T4":
        if a == 1 and b == 1:
            raise DomainError("rho1 = rho2 = 1: the product integral diverges")
        if not t4_admissible(a, b):
            raise DomainError(
                f"(rho1, rho2) = ({a}, {b}) outside the convergence region: need rho1 <= 1, "
                "rho2 < 1, or rho1 < 1, rho2 >= 1 with rho1 rho2 < 1")

        def f(s):
            u = _phi_kernel(a, -s)
            return u * _phi_kernel(b, -x * s ** b) / s

        def per(s):
            p1 = _period_phi(a, s)
            y = x * s ** b
            p2 = _period_phi(b, y) * s / (b * y)
            return min(p1, p2)

        return quad_semi_infinite(f, "exponential", tol, period=per)
    if form == "T5":
        _check_sigma(a)
        if not b > 0:
            raise DomainError("rho must be positive")
        sg = _sgn(sign)

        def f(s):
            u = _phi_kernel(-a, -s)
            return 0.0 if u == 0.0 else u * _phi_kernel(b, sg * x * s ** b) / s

        return quad_semi_infinite(f, "exponential", tol)
    raise DomainError(f"form must be T3, T4 or T5, got {form!r}")


_SPECIAL_SIGMAS = (0.5, 1 / 3, 2 / 3)


def _special_kernel(sigma: float):
    """s^(-1/2) phi(-sigma, 0; -s) rewritten through Gaussian, K_{1/3} and Whittaker W."""
    if abs(sigma - 0.5) < 1e-12:
        return lambda s: 0.5 / _SQRT_PI * s ** 0.5 * math.exp(-s * s / 4)
    if abs(sigma - 1 / 3) < 1e-12:
        c = 2 / (3 * math.sqrt(3.0))
        return lambda s: s / (3 * math.pi) * special.kve(1 / 3, c * s ** 1.5) * math.exp(
            -c * s ** 1.5)

    def g(s):
        z = 4 * s ** 3 / 27
        if z > 700:
            return 0.0
        return math.sqrt(3 / math.pi) * s ** -0.5 * math.exp(-z / 2) * whittaker_w(0.5, 1 / 6, z)

    return g


def reflection_pair(sigma: float, x: float, direction: str = "forward", route: str = "generic",
                    sign="+", tol: float = 1e-8) -> QuadResult:
    """Reflection between phi(sigma, 0; .) and phi(-sigma, 0; .).

    forward:  sqrt(x) int phi(-sigma, 0; -s) s^-1/2 I_1(2 sqrt(xs)) ds = phi(sigma, 0; x);
              with sign "-", J_1 and an overall minus give phi(sigma, 0; -x).
    backward: -sqrt(x) int phi(sigma, 0; -s) s^-1/2 J_1(2 sqrt(xs)) ds = phi(-sigma, 0; -x).
    route "special" (forward, sigma in {1/2, 1/3, 2/3}) uses the classical-function kernels.
    """
    _check_sigma(sigma)
    if not 0 < x <= 10:
        raise RangeError("supported range is 0 < x <= 10")
    sg = _sgn(sign)
    rx = math.sqrt(x)
    if direction == "forward":
        if route == "special":
            if not any(abs(sigma - q) < 1e-12 for q in _SPECIAL_SIGMAS):
                raise DomainError("special route exists for sigma in {1/2, 1/3, 2/3}")
            ker = _special_kernel(sigma)
        elif route == "generic":
            def ker(s):
                return _phi_kernel(-sigma, -s) * s ** -0.5
        else:
            raise DomainError(f"route must be 'generic' or 'special', got {route!r}")
        if sg > 0:
            def f(s):
                z = 2 * math.sqrt(x * s)
                k = ker(s)
                return 0.0 if k == 0.0 else k * special.ive(1, z) * math.exp(z)

            return quad_semi_infinite(f, "exponential", tol).scaled(rx)

        def f(s):
            return ker(s) * special.j1(2 * math.sqrt(x * s))

        per = lambda s: math.pi * math.sqrt(s / x) if s > 0 else math.inf
        return quad_semi_infinite(f, "exponential", tol, period=per).scaled(-rx)
    if direction == "backward":
        if route != "generic":
            raise DomainError("backward direction has only the generic route")

        def f(s):
            return _phi_kernel(sigma, -s) * s ** -0.5 * special.j1(2 * math.sqrt(x * s))

        def per(s):
            return min(_period_phi(sigma, s), math.pi * math.sqrt(s / x)) if s > 0 else math.inf

        return quad_semi_infinite(f, "exponential", tol, period=per).scaled(-rx)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


# -- closed forms for the saddle ---------------------------------------------------

def saddle_ys_closed_form(rho: float, a: float, tol: float = 1e-10) -> float:
    """Root y_s in (0, 1) of y^(1+rho) = a (1 - y), rho in [-1/2, 0), via a phi integral."""
    if not -0.5 - 1e-12 <= rho < 0:
        raise DomainError("the integral form is established for rho in [-1/2, 0) only")
    if not a > 0:
        raise DomainError("a must be positive")
    q = 1 + rho

    def f(y):
        if abs(y - 1.0) < 1e-9:
            # removable: phi(-q, 0; w) ~ w / Gamma(-q) as w -> 0
            return -math.exp(-a) / (math.gamma(-q) * a ** q)
        v = _phi_kernel(-q, (y - 1) / (a * y) ** q)
        return math.exp(-a * y) * v / (y * (1 - y))

    r = quad_semi_infinite(f, "exponential", tol, scale=1 / a, points=(1.0,))
    if not r.value > 0:
        raise AccuracyError("integral not positive; logarithm undefined", best=r)
    return (-math.log(r.value)) ** (1 / q)


def saddle_closed_form_check(rho: float, u: float, tol: float = 1e-10) -> float:
    """Saddle t_s of t^rho (t - 1) = 1/(|rho| u) from a phi-integral representation.

    For rho > 0 the representation
    T(v) = {v - log int_0^inf e^-vy / (y (1+y)) phi(-rho/(rho+1), 0; -(1+y) y^(-rho/(rho+1))) dy}^(1/(rho+1))
    solves T^rho (T - 1) = v, so it is evaluated at v = 1/(rho u).  For rho in
    [-1/2, 0) it goes through y_s with a = |rho| u and returns 1/y_s.
    """
    if not u > 0:
        raise DomainError("u must be positive")
    if rho < 0:
        return 1.0 / saddle_ys_closed_form(rho, -rho * u, tol)
    if rho == 0:
        raise DomainError("rho must be non-zero")
    return _t_of_v(rho, 1.0 / (rho * u), tol)


def _t_of_v(rho: float, v: float, tol: float) -> float:
    q = rho / (rho + 1)

    def f(y):
        p = _phi_kernel(-q, -(1 + y) * y ** -q)
        if p == 0.0:
            return 0.0
        return math.exp(-v * y) * p / (y * (1 + y))

    r = quad_semi_infinite(f, "exponential", tol, scale=1 / v)
    if not r.value > 0:
        raise AccuracyError("integral not positive; logarithm undefined", best=r)
    return (v - math.log(r.value)) ** (1 / (rho + 1))


def saddle_newton(rho: float, u: float) -> float:
    return solve_saddle(rho, u).t_s
