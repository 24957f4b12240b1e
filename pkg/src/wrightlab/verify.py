"""Property suites: every identity, exact form and asymptotic claim as a checked grid.

Each check returns a CheckResult with its worst residual.  ``run_suite``
runs a named suite; a ``tol`` override replaces the default tolerance of the
agreement checks (ladders and boolean properties keep their own criteria).
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import special

from . import asymptotics as asy
from . import closed_forms as cf
from . import integral_reps as ir
from . import specfun as sf
from .errors import DomainError, WrightError
from .logscale import LogScaledReal
from .tables import reproduce
from .wright_core import WrightParams, phi_series, phi_series_lsr, psi11_normalized, psi11_series

LADDER_TOP = 5e-2
NOISE_FLOOR = 1e-13  # residuals below this count as exact when checking monotonicity


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    worst: float
    points: int
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status} [{self.suite}] {self.name}: worst={self.worst:.3e} points={self.points}{extra}"


_SUITES: dict[str, list[tuple[str, Callable]]] = {
    "identities": [], "integrals": [], "asymptotics": [], "coeffs": []}


def _check(suite: str, name: str):
    def deco(fn):
        _SUITES[suite].append((name, fn))
        return fn
    return deco


def _rel(got, want) -> float:
    if isinstance(got, LogScaledReal) or isinstance(want, LogScaledReal):
        g = got if isinstance(got, LogScaledReal) else LogScaledReal.from_float(float(got))
        w = want if isinstance(want, LogScaledReal) else LogScaledReal.from_float(float(want))
        return g.rel_diff(w)
    if want == 0:
        return abs(got)
    return abs(got - want) / abs(want)


def _absrel(got: float, want: float) -> float:
    # absolute below magnitude 1, relative above: the looser of the two
    return abs(got - want) / max(1.0, abs(want))


class _Tally:
    """Collects residuals; an exception at a point is a failure at that point."""

    def __init__(self, tol: float):
        self.tol = tol
        self.worst = 0.0
        self.n = 0
        self.bad: list[str] = []

    def add(self, label, residual: float):
        self.n += 1
        if not residual <= self.tol:
            self.bad.append(f"{label}: {residual:.2e}")
        if math.isfinite(residual):
            self.worst = max(self.worst, residual)
        else:
            self.worst = math.inf

    def run(self, label, fn, metric=_rel):
        try:
            got, want = fn()
        except WrightError as e:
            self.n += 1
            self.worst = math.inf
            self.bad.append(f"{label}: {type(e).__name__}: {e}")
            return
        self.add(label, metric(got, want))

    def detail(self) -> str:
        if not self.bad:
            return ""
        more = f" (+{len(self.bad) - 3} more)" if len(self.bad) > 3 else ""
        return "failed at " + "; ".join(self.bad[:3]) + more

    def result(self, suite, name) -> tuple:
        return (not self.bad and self.n > 0), self.worst, self.n, self.detail()


def _ladder(errs: list[float], top: float = LADDER_TOP) -> bool:
    clipped = [max(e, NOISE_FLOOR) for e in errs]
    return all(b <= a for a, b in zip(clipped, clipped[1:])) and errs[-1] < top


# == coefficients =========================================================================

_D_LISTED = {
    1: lambda r: [1],
    2: lambda r: [1, 1 + r],
    3: lambda r: [1, 3 * (1 + r), (1 + r) * (2 + r)],
    4: lambda r: [1, 6 * (1 + r), (1 + r) * (11 + 7 * r), (1 + r) * (2 + r) * (3 + r)],
    5: lambda r: [1, 10 * (1 + r), 5 * (1 + r) * (7 + 5 * r), 5 * (1 + r) * (2 + r) * (5 + 3 * r),
                  (1 + r) * (2 + r) * (3 + r) * (4 + r)],
}
_RATIONAL_RHOS = [Fraction(-2, 3), Fraction(-1, 2), Fraction(-1, 3), Fraction(1, 3),
                  Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5), Fraction(7, 3)]


@_check("coeffs", "D coefficients equal the explicit k=1..5 lists (exact rationals)")
def _d_lists(tol):
    t = _Tally(0.0)
    for k, listed in _D_LISTED.items():
        for r in _RATIONAL_RHOS:
            got = cf.d_coeffs(r, k).exact
            want = [Fraction(v) for v in listed(r)]
            t.add(f"k={k} rho={r}", 0.0 if list(got) == want else 1.0)
    return t


def _b_listed(r: float) -> list[float]:
    a = 1 + r
    return [1.0, 1 / a, r / (2 * a ** 2), r * (r - 1) / (3 * a ** 3),
            r * (2 - 5 * r + 2 * r * r) / (8 * a ** 4),
            r / (15 * a ** 3) * (-3 + 13 * r - 13 * r ** 2 + 3 * r ** 3),
            r / (144 * a ** 6) * (24 - 154 * r + 269 * r ** 2 - 154 * r ** 3 + 24 * r ** 4)]


@_check("coeffs", "B_0..B_6 equal the listed closed forms")
def _b_forms(tol):
    t = _Tally(tol or 1e-14)
    for r in (0.3, 0.5, 1.0, 2.0, 3.6):
        got = asy.b_coeffs(r).values
        for j, want in enumerate(_b_listed(r)):
            t.add(f"B{j}(rho={r})", _absrel(got[j], want))
    return t


@_check("coeffs", "B series reproduces the Newton saddle to O(chi^-7)")
def _b_newton(tol):
    t = _Tally(tol or 1e-9)
    for r in (0.5, 1.0, 2.0, 3.6):
        b = asy.b_coeffs(r).values
        chi = 40.0
        u = 1 / (r * chi ** (1 + r))
        ts = asy.solve_saddle(r, u).t_s
        series = chi * math.fsum(c * chi ** -j for j, c in enumerate(b))
        t.add(f"rho={r}", abs(series / ts - 1))
    return t


def _hankel_a(j: int, nu: float) -> float:
    p = 1.0
    for i in range(1, j + 1):
        p *= 4 * nu * nu - (2 * i - 1) ** 2
    return p / (math.factorial(j) * 8.0 ** j)


@_check("coeffs", "c_1..c_4 at rho=1 equal the Bessel I_1 large-argument coefficients")
def _c_bessel(tol):
    t = _Tally(tol or 1e-14)
    c = asy.c_coeffs(1.0).values
    for j in range(5):
        t.add(f"c{j}", _absrel(c[j], (-1) ** j * _hankel_a(j, 1.0)))
    return t


@_check("coeffs", "c_j(-1/3): polynomial route equals gamma-ratio closed form")
def _c_third(tol):
    t = _Tally(tol or 1e-12)
    c = asy.c_coeffs(-1 / 3).values
    for j in range(5):
        t.add(f"c{j}", _absrel(c[j], asy.c_neg_third(j)))
    t.add("c1 = 5/72", abs(c[1] - 5 / 72))
    return t


@_check("coeffs", "c_j(-1/2) = 0 for j >= 1")
def _c_half(tol):
    t = _Tally(0.0)
    c = asy.c_coeffs(-0.5).values
    t.add("c0", abs(c[0] - 1))
    for j in range(1, 5):
        t.add(f"c{j}", abs(c[j]))
    return t


@_check("coeffs", "Stirling numbers s(n,n-2), S(n,n-2) closed forms, n<=20")
def _stirling(tol):
    t = _Tally(0.0)
    for n in range(2, 21):
        b3 = math.comb(n, 3)
        t.add(f"s({n},{n - 2})", 0.0 if 4 * sf.stirling("first", n, n - 2) == (3 * n - 1) * b3 else 1.0)
        t.add(f"S({n},{n - 2})", 0.0 if 4 * sf.stirling("second", n, n - 2) == (3 * n - 5) * b3 else 1.0)
    return t


# == identities ========================================================================

_POLY_RHOS = (-2 / 3, -0.5, -1 / 3, 1 / 3, 0.5, 1.0, 2.0, 5.0)
_POLY_XS = (-5.0, -1.0, -0.25, 0.25, 1.0, 5.0)


@_check("identities", "polynomial form equals the series (exact finite expansion)")
def _poly_exact(tol):
    t = _Tally(tol or 1e-11)
    for r in _POLY_RHOS:
        for k in range(1, 9):
            for x in _POLY_XS:
                t.run(f"rho={r:.4g} k={k} x={x}",
                      lambda: (cf.psi11_polynomial(r, k, x), psi11_series(r, k, 0.0, x)))
    return t


@_check("identities", "rho=1 Kummer 1F1 form")
def _kummer(tol):
    t = _Tally(tol or 1e-9)
    for k in range(1, 6):
        for x in (-3.0, -1.0, -0.5, 0.5, 1.0, 3.0):
            t.run(f"k={k} x={x}", lambda: (cf.psi11_rho1(k, x), psi11_series(1.0, k, 0.0, x)))
    return t


@_check("identities", "rho=-1/2 Bessel I/K forms against the series (integer k)")
def _half_bessel(tol):
    t = _Tally(tol or 1e-9)
    for k in range(1, 5):
        for x in (0.5, 1.0, 2.0, 5.0):
            for sg in ("+", "-"):
                y = x if sg == "+" else -x
                t.run(f"k={k} x={y}", lambda: (cf.psi11_half_integer_neg(k, x, sg),
                                              psi11_series(-0.5, k, 0.0, y).to_float()))
    return t


@_check("identities", "rho=-1/2 pole-safe series at k=3 equals the Bessel forms")
def _pole_safe(tol):
    t = _Tally(tol or 1e-10)
    for x in (0.5, 1.0, 2.0, 4.0):
        for sg in ("+", "-"):
            y = x if sg == "+" else -x
            t.run(f"x={y}", lambda: (psi11_series(-0.5, 3, 0.0, y).to_float(),
                                     cf.psi11_half_integer_neg(3, x, sg)))
    return t


@_check("identities", "rho=-1/2 non-half-integer k form")
def _nonint(tol):
    t = _Tally(tol or 1e-9)
    for k in (0.25, 0.7, 1.2, 2.3):
        for x in (0.5, 1.0, 3.0):
            for sg in ("+", "-"):
                y = x if sg == "+" else -x
                p = WrightParams(-0.5, k, 0.0, y, allow_real_k=True)
                t.run(f"k={k} x={y}", lambda: (cf.psi11_nonint_k_neg_half(k, x, sg),
                                              psi11_series(p).to_float()))
    return t


_PHI_XS = (-5.0, -3.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0)


@_check("identities", "phi closed forms (Bessel, Gaussian, Airy, Whittaker)")
def _phi_closed(tol):
    t = _Tally(tol or 1e-9)
    for r in cf.CLOSED_RHOS:
        for x in _PHI_XS:
            t.run(f"rho={r:.4g} x={x}", lambda: (cf.phi_closed(r, x), phi_series(r, 0.0, x)))
    return t


@_check("identities", "rising-product and log-gamma kernels agree")
def _paths(tol):
    t = _Tally(tol or 1e-12)
    for r in (0.5, 1.0, 2.0, 0.3):
        for k in (1, 2, 3, 5):
            for x in (-1.0, 0.5, 2.0):
                t.run(f"rho={r} k={k} x={x}",
                      lambda: (psi11_series(r, k, 0.0, x, path="rising"),
                               psi11_series(r, k, 0.0, x, path="lgamma")))
    return t


@_check("identities", "phi(rho, 0; 0) = 0 and 1Psi1 > 0 for x, rho > 0")
def _signs(tol):
    t = _Tally(0.0)
    for r in (-0.5, 0.5, 1.0, 3.0):
        t.add(f"phi rho={r}", abs(phi_series(r, 0.0, 0.0)))
    for r in (0.3, 1.0, 2.5):
        for k in (1, 4, 9):
            for x in (0.1, 2.0, 30.0):
                t.add(f"sign rho={r} k={k} x={x}", 0.0 if psi11_series(r, k, 0.0, x).sign > 0 else 1.0)
    return t


@_check("identities", "rising products compose, ln_gamma reproduces factorials")
def _products(tol):
    t = _Tally(tol or 1e-13)
    rng = np.random.default_rng(7)
    for z in rng.uniform(-5, 5, 12):
        for k, m in ((3, 4), (5, 7), (1, 11), (6, 6)):
            a = sf.rising_product(z, k) * sf.rising_product(z + k, m)
            b = sf.rising_product(z, k + m)
            t.add(f"z={z:.3f} k={k} m={m}", abs(a - b) / max(abs(b), 1e-300))
    for n in range(2, 31):
        want = math.log(math.factorial(n - 1))
        t.add(f"ln({n - 1}!)", abs(sf.ln_gamma(n) - want) / max(want, 1.0))
    return t


@_check("identities", "Bessel reflection and Whittaker connection")
def _bessel_whittaker(tol):
    t = _Tally(tol or 1e-9)
    for nu in (1 / 3, 1 / 6, 5 / 6):
        for x in (0.5, 1.0, 2.0):
            lhs = sf.bessel("I", -nu, x)
            rhs = sf.bessel("I", nu, x) + 2 / math.pi * math.sin(math.pi * nu) * sf.bessel("K", nu, x)
            t.add(f"I nu={nu:.3f} x={x}", _rel(lhs, rhs))
    for z in (0.5, 1.0, 2.0):
        lhs = sf.whittaker_w(-0.5, 1 / 6, z)
        rhs = 6 * sf.whittaker_w(0.5, 1 / 6, z) - 6 * z / math.sqrt(math.pi) * sf.bessel("K", 1 / 3, z / 2)
        t.add(f"W z={z}", _rel(lhs, rhs))
    return t


# == asymptotics ===============================================================================

def _ladder_tally(rows) -> _Tally:
    """rows: (label, [errors on the ladder]) -> pass iff each ladder behaves."""
    t = _Tally(0.0)
    for label, errs in rows:
        t.n += 1
        t.worst = max(t.worst, errs[-1])
        if not _ladder(errs):
            t.bad.append(f"{label}: " + ", ".join(f"{e:.2e}" for e in errs))
    return t


def _errs(fn, rungs):
    out = []
    for r in rungs:
        got, want = fn(r)
        out.append(_rel(got, want))
    return out


@_check("asymptotics", "phi, rho > 0, exponential expansion: error ladder in x")
def _lad_pos(tol):
    rows = []
    for r in (0.5, 1.0, 2.0):
        rows.append((f"rho={r}", _errs(lambda x: (asy.phi_asym_pos_rho(r, x, 2), phi_series(r, 0.0, x)),
                                       (10.0, 20.0, 40.0))))
    return _ladder_tally(rows)


def _neg_pos_oracle(sigma, x):
    if sigma > 0.5:
        return ir.phi_real_integral(sigma, x, "+", 1e-12).value
    return phi_series(-sigma, 0.0, x)


@_check("asymptotics", "phi, rho < 0, positive argument, all five regimes: error ladder in x")
def _lad_negpos(tol):
    rows = []
    for s in (0.2, 1 / 3, 0.4, 0.5, 0.7):
        def pair(x, s=s):
            rep = asy.phi_asym_neg_rho_pos_x(s, x, 3)
            return rep.value.to_float(), _neg_pos_oracle(s, x)
        rows.append((f"sigma={s:.4g} ({asy._regime(s)})", _errs(pair, (10.0, 20.0, 40.0))))
    return _ladder_tally(rows)


@_check("asymptotics", "phi, rho < 0, negative argument, exponentially small: error ladder in x")
def _lad_negneg(tol):
    rows = []
    for s in (1 / 3, 2 / 3):
        rows.append((f"sigma={s:.4g}", _errs(
            lambda x: (asy.phi_asym_neg_rho_neg_x_lsr(s, x, 3), phi_series_lsr(-s, 0.0, -x)),
            (4.0, 8.0, 16.0))))
    return _ladder_tally(rows)


@_check("asymptotics", "sigma=1/2 exponentially small form equals the Gaussian closed form")
def _half_exact(tol):
    t = _Tally(tol or 1e-12)
    for x in (0.5, 1.0, 3.0, 7.0, 15.0, 30.0):
        want = x * math.exp(-x * x / 4) / (2 * math.sqrt(math.pi))
        t.add(f"x={x}", _rel(asy.phi_asym_neg_rho_neg_x(0.5, x), want))
    return t


@_check("asymptotics", "1Psi1, rho < 0, large k at fixed x: error ladder in k")
def _lad_largek(tol):
    rows = []
    for r, x, ks in ((-0.5, 1.0, (100, 200, 400)), (-1 / 3, 1.0, (400, 800, 1600)),
                     (-0.7, -2.0, (100, 200, 400))):
        rows.append((f"rho={r:.4g} x={x}", _errs(
            lambda k: (asy.psi11_negrho_largek(r, k, x), psi11_normalized(r, k, 0.0, x)), ks)))
    return _ladder_tally(rows)


@_check("asymptotics", "1Psi1 saddle approximation, rho < 0: error ladder in k")
def _lad_saddle(tol):
    rows = []
    for r, u in ((-0.5, 2.0), (-0.3, 1.0), (-0.8, 4.0)):
        rows.append((f"rho={r} u={u}", _errs(
            lambda k: (asy.psi11_saddle_approx(r, k, -u * k), psi11_series(r, k, 0.0, -u * k)),
            (20, 40, 80))))
    return _ladder_tally(rows)


@_check("asymptotics", "1Psi1 / (Gamma(k) phi) ratio tends to 1: error ladder in k")
def _lad_t6(tol):
    rows = []
    for r, x in ((0.5, 1.0), (0.3, 2.0), (-0.5, 2.0), (-1 / 3, -1.0)):
        rows.append((f"rho={r:.4g} x={x}", _errs(lambda k: (asy.theorem6_ratio(r, k, x), 1.0),
                                                 (100, 200, 400))))
    return _ladder_tally(rows)


_SADDLE_RHOS = (0.3, 0.5, 1.0, 2.0, 3.6, -0.2, -0.5, -0.8)
_SADDLE_US = (0.1, 1.0, 10.0)


@_check("asymptotics", "saddle residual below 1e-12 (scaled) on the 24-point grid")
def _saddle_res(tol):
    t = _Tally(1e-12)
    for r in _SADDLE_RHOS:
        for u in _SADDLE_US:
            s = asy.solve_saddle(r, u)
            t.add(f"rho={r} u={u}", s.residual * abs(r) * u)
    return t


@_check("asymptotics", "phase sign: psi(t_s) > 0 for rho > 0, < 0 for rho < 0")
def _saddle_sign(tol):
    t = _Tally(0.0)
    for r in _SADDLE_RHOS:
        for u in _SADDLE_US:
            s = asy.solve_saddle(r, u)
            t.add(f"rho={r} u={u}", 0.0 if (s.psi_value > 0) == (r > 0) else 1.0)
    return t


@_check("asymptotics", "integral closed forms of the saddle match Newton")
def _saddle_closed(tol):
    t = _Tally(tol or 1e-6)
    for r in (0.3, 0.5, 1.0, 2.0, 3.6, -0.2, -0.3, -0.45, -0.5):
        for u in _SADDLE_US:
            t.run(f"rho={r} u={u}", lambda: (ir.saddle_closed_form_check(r, u),
                                             asy.solve_saddle(r, u).t_s))
    return t


@_check("asymptotics", "7-term chi seed within 1e-3 of the saddle for chi >= 5")
def _chi_seed(tol):
    t = _Tally(1e-3)
    for r in (0.3, 0.5, 1.0, 2.0, 3.6):
        b = asy.b_coeffs(r).values
        for chi in (5.0, 10.0, 50.0):
            u = 1 / (r * chi ** (1 + r))
            seed = chi * math.fsum(c * chi ** -j for j, c in enumerate(b))
            t.add(f"rho={r} chi={chi}", abs(seed / asy.solve_saddle(r, u).t_s - 1))
    return t


@_check("asymptotics", "rho=1 and rho=2 large-k specializations equal the generic formula")
def _special_largek(tol):
    t = _Tally(tol or 1e-12)
    for k in (20, 100, 1000):
        for x in (0.5, 1.0, 5.0):
            t.add(f"rho=1 k={k} x={x}", _rel(asy.psi11_rho1_largek(k, x), asy.psi11_largek_smallx(1.0, k, x, 3)))
            t.add(f"rho=2 k={k} x={x}", _rel(asy.psi11_rho2_largek(k, x), asy.psi11_largek_smallx(2.0, k, x, 3)))
    return t


@_check("asymptotics", "algebraic expansion vanishes termwise at sigma = 1/3 and 1/2")
def _h_zero(tol):
    t = _Tally(0.0)
    for s in (1 / 3, 0.5):
        for x in (2.0, 10.0):
            for j, h in enumerate(asy.phi_H_terms(s, x, 12)):
                t.add(f"sigma={s:.4g} x={x} term {j}", abs(h))
    return t


@_check("asymptotics", "large-k table errors within 2% of the printed columns")
def _table_errors(tol):
    t = _Tally(0.02)
    for tid in (1, 2):
        for row in reproduce(tid):
            p = row.printed
            t.add(f"table {tid} k={p.k} {p.params}", abs(row.rel_error - p.error) / p.error)
    return t


# == integrals =================================================================================

INTEGRAL_TOL = 1e-6


class _QuadTally(_Tally):
    """Agreement plus honesty of the error estimate: |value - target| <= 10 * estimate."""

    def __init__(self, tol):
        super().__init__(tol)
        self.dishonest: list[str] = []

    def quad(self, label, fn):
        try:
            q, want = fn()
        except WrightError as e:
            self.n += 1
            self.worst = math.inf
            self.bad.append(f"{label}: {type(e).__name__}: {e}")
            return
        diff = abs(q.value - want)
        self.add(label, diff / max(1.0, abs(want)))
        # the target itself carries ~1e-13 relative noise
        if diff > 10 * q.abs_err_estimate + 1e-12 * max(1.0, abs(want)):
            self.dishonest.append(label)

    def detail(self):
        d = super().detail()
        if self.dishonest:
            d = (d + "; " if d else "") + "estimate too small at " + ", ".join(self.dishonest[:3])
        return d

    def result(self, suite, name):
        ok, worst, n, det = super().result(suite, name)
        return ok and not self.dishonest, worst, n, det


def _psi(r, k, x):
    return psi11_series(r, k, 0.0, x).to_float()


@_check("integrals", "mixing relation: exponential mixture of phi gives 1Psi1")
def _mixing(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for r, k, x in ((0.5, 1, 0.5), (0.5, 2, 1.0), (1.0, 1, 0.5), (1.0, 3, 1.0), (2.0, 2, 0.5),
                    (0.6, 1.5, 1.0), (-1 / 3, 1, 1.0), (-0.5, 2, 1.0), (-2 / 3, 3, 0.5)):
        eps = 1 if r > 0 else -1
        t.quad(f"rho={r:.4g} k={k} x={x}", lambda: (ir.mixing_relation_rhs(r, k, x), _psi(r, k, eps * x)))
    return t


@_check("integrals", "mixing consistency grid (rho in +-1/3.., k=1..3, x=0.5, 1)")
def _mixing_grid(tol):
    t = _QuadTally(tol or 1e-8)
    for r in (0.5, 1.0, 2.0, -1 / 3, -0.5, -2 / 3):
        for k in (1, 2, 3):
            for x in (0.5, 1.0):
                eps = 1 if r > 0 else -1
                t.quad(f"rho={r:.4g} k={k} x={x}",
                       lambda: (ir.mixing_relation_rhs(r, k, x, tol=1e-10), _psi(r, k, eps * x)))
    return t


@_check("integrals", "K_{1/3} and Whittaker integrals for rho = -1/3, -2/3")
def _thm1(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for variant, r in (("1/3", -1 / 3), ("2/3", -2 / 3)):
        for k, x in ((1, 1.0), (2, 0.5), (3, 2.0), (1, 4.0), (4, 1.0), (2, 3.0)):
            t.quad(f"{variant} k={k} x={x}", lambda: (ir.theorem1_rhs(variant, k, x), _psi(r, k, -x)))
    return t


@_check("integrals", "branch-cut integral for phi(-sigma, 0; +-x)")
def _real_int(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, x, sg in ((0.5, 2.0, "-"), (1 / 3, 1.0, "-"), (0.6, 1.0, "+"), (0.25, 2.0, "+"),
                     (0.75, 1.5, "-"), (0.4, 3.0, "+"), (0.9, 1.0, "+"), (0.2, 1.0, "-")):
        y = x if sg == "+" else -x
        t.quad(f"sigma={s:.4g} x={y}", lambda: (ir.phi_real_integral(s, x, sg), phi_series(-s, 0.0, y)))
    return t


@_check("integrals", "Mikusinski integral over (0, pi)")
def _mik(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, x in ((0.5, 2.0), (2 / 3, 3.0), (0.9, 1.0), (0.25, 1.0), (0.3, 4.0), (0.75, 2.0)):
        t.quad(f"sigma={s:.4g} x={x}", lambda: (ir.phi_mikusinski(s, x), phi_series(-s, 0.0, -x)))
    return t


@_check("integrals", "halving relation phi(-sigma) -> phi(-sigma/2)")
def _halving(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, x in ((0.5, 1.0), (2 / 3, 1.0), (1 / 3, 2.0), (0.4, 0.5), (0.8, 1.0), (0.6, 3.0)):
        t.quad(f"sigma={s:.4g} x={x}",
               lambda: (ir.halving_relation_rhs(s, x), phi_series(-s / 2, 0.0, -x)))
    # Gaussian target: sigma = 1/2 halves to -1/4 with the exact kernel behind it
    return t


@_check("integrals", "halving relation at sigma = 1/2 against the quarter-power integral")
def _halving_half(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for x in (0.5, 1.0, 2.0, 3.0, 5.0, 8.0):
        t.quad(f"x={x}", lambda: (ir.halving_relation_rhs(0.5, x), ir.derived_reps("quarter", x).value))
    return t


@_check("integrals", "quarter-power integral (negative exponent) for phi(-1/4, 0; -x)")
def _quarter(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for x in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
        t.quad(f"x={x}", lambda: (ir.derived_reps("quarter", x), phi_series(-0.25, 0.0, -x)))
    return t


@_check("integrals", "K_{1/3} integral for phi(-1/6, 0; -x)")
def _sixth(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for x in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
        t.quad(f"x={x}", lambda: (ir.derived_reps("sixth", x), phi_series(-1 / 6, 0.0, -x)))
    return t


@_check("integrals", "Laplace transform, rho < 0")
def _lap_neg(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, d, a, z in ((0.5, 1.0, 1.0, 1.0), (0.5, 1.0, 2.0, 4.0), (1 / 3, 0.5, 1.0, 2.0),
                       (0.7, 2.0, 0.5, 1.0), (0.25, 1.5, 1.0, 0.5), (0.6, 0.0, 1.0, 1.0)):
        t.quad(f"sigma={s:.4g} delta={d} alpha={a} z={z}",
               lambda: (ir.laplace_transform_lhs("neg", s, d, a, z),
                        ir.laplace_transform_rhs("neg", s, d, a, z)))
    return t


@_check("integrals", "Laplace transform, rho > 0, both signs")
def _lap_pos(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for r, d, a, z, sg in ((1.0, 0.0, 1.0, 2.0, "+"), (0.5, 0.0, 1.0, 1.0, "-"), (0.5, 1.0, 1.0, 2.0, "+"),
                           (2.0, 1.5, 0.5, 1.0, "-"), (1.0, 2.0, 1.0, 3.0, "-"), (0.3, 0.0, 2.0, 1.5, "+")):
        t.quad(f"rho={r} delta={d} alpha={a} z={z} {sg}",
               lambda: (ir.laplace_transform_lhs("pos", r, d, a, z, sg),
                        ir.laplace_transform_rhs("pos", r, d, a, z, sg)))
    return t


@_check("integrals", "Mellin transform")
def _mellin(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, mu, x in ((0.5, 2.0, 1.0), (0.5, 1.0, 1.0), (2 / 3, 1.5, 2.0), (0.3, 0.5, 1.0),
                     (0.8, 3.0, 0.5), (0.4, -0.5, 2.0)):
        t.quad(f"sigma={s:.4g} mu={mu} x={x}", lambda: (ir.mellin_lhs(s, mu, x), ir.mellin_rhs(s, mu, x)))
    return t


@_check("integrals", "bilateral exponential integral (Airy case at sigma = 1/3)")
def _bilateral(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, v in ((0.5, 1.0), (1 / 3, 0.0), (1 / 3, 0.8), (0.5, 0.3), (0.6, 1.0), (2 / 3, 0.5), (0.4, 0.7)):
        t.quad(f"sigma={s:.4g} s={v}", lambda: (ir.bilateral_exp_lhs(s, v), math.exp(v ** (1 / s))))
    return t


@_check("integrals", "multiplication theorem, two negative indices")
def _t3(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for a, b, x in ((0.5, 0.5, 1.0), (0.5, 2 / 3, 1.0), (1 / 3, 0.5, 2.0), (0.8, 0.6, 0.5),
                    (0.25, 0.9, 1.0), (0.6, 0.3, 3.0)):
        t.quad(f"({a:.4g}, {b:.4g}) x={x}",
               lambda: (ir.mult_theorem_rhs("T3", (a, b), x), phi_series(-a * b, 0.0, -x)))
    return t


@_check("integrals", "multiplication theorem, two positive indices")
def _t4(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for a, b, x in ((0.5, 1.0, 1.0), (0.5, 0.5, 1.0), (0.8, 0.9, 2.0), (0.3, 2.0, 1.0),
                    (1.0, 0.5, 1.5), (0.6, 0.4, 0.5)):
        t.quad(f"({a}, {b}) x={x}",
               lambda: (ir.mult_theorem_rhs("T4", (a, b), x), phi_series(-a * b, 0.0, -x)))
    return t


@_check("integrals", "multiplication theorem, positive indices outside the region raise")
def _t4_guard(tol):
    t = _Tally(0.0)
    for a, b in ((1.0, 1.0), (1.5, 0.5), (2.0, 2.0), (0.8, 1.5), (1.0, 1.2), (1.2, 1.0)):
        try:
            ir.mult_theorem_rhs("T4", (a, b), 1.0)
            t.add(f"({a}, {b})", 1.0)
        except DomainError:
            t.add(f"({a}, {b})", 0.0)
    return t


@_check("integrals", "multiplication theorem, mixed indices, both signs")
def _t5(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, r, x, sg in ((0.5, 1.0, 1.0, "+"), (0.5, 1.0, 1.0, "-"), (1 / 3, 0.5, 2.0, "+"),
                        (0.6, 2.0, 0.5, "-"), (0.25, 1.5, 1.0, "+"), (0.8, 0.5, 3.0, "-")):
        y = x if sg == "+" else -x
        t.quad(f"sigma={s:.4g} rho={r} x={y}",
               lambda: (ir.mult_theorem_rhs("T5", (s, r), x, sg), phi_series(r * s, 0.0, y)))
    return t


@_check("integrals", "reflection principle, both directions and special kernels")
def _reflect(tol):
    t = _QuadTally(tol or INTEGRAL_TOL)
    for s, x in ((0.5, 1.0), (1 / 3, 0.5), (0.7, 2.0)):
        t.quad(f"forward sigma={s:.4g} x={x}",
               lambda: (ir.reflection_pair(s, x, "forward"), phi_series(s, 0.0, x)))
    for s, x in ((0.5, 1.0), (1 / 3, 0.5), (2 / 3, 1.0)):
        t.quad(f"forward special sigma={s:.4g} x={x}",
               lambda: (ir.reflection_pair(s, x, "forward", "special"), phi_series(s, 0.0, x)))
    t.quad("forward minus sigma=0.5 x=2",
           lambda: (ir.reflection_pair(0.5, 2.0, "forward", sign="-"), phi_series(0.5, 0.0, -2.0)))
    for s, x in ((0.5, 1.0), (0.3, 2.0), (0.8, 1.0)):
        t.quad(f"backward sigma={s:.4g} x={x}",
               lambda: (ir.reflection_pair(s, x, "backward"), phi_series(-s, 0.0, -x)))
    return t


POSITIVITY_SIGMAS = (0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9)


def positivity_grid(n: int = 40) -> np.ndarray:
    return np.geomspace(0.05, 20.0, n)


@_check("integrals", "phi(-sigma, 0; -x) > 0 on a 40-point log grid")
def _positivity(tol):
    t = _Tally(0.0)
    for s in POSITIVITY_SIGMAS:
        rep = ir.positivity_scan(s, positivity_grid())
        t.n += rep.points - 1
        t.add(f"sigma={s}", 0.0 if rep.all_positive else float(len(rep.violations)))
    return t


# == runner ==================================================================================

SUITE_NAMES = ("identities", "integrals", "asymptotics", "coeffs", "all")


def check_names(suite: str) -> list[str]:
    return [name for name, _ in _SUITES[suite]]


def run_check(suite: str, name: str, tol: float | None = None) -> CheckResult:
    fn = dict(_SUITES[suite])[name]
    t0 = time.perf_counter()
    try:
        tally = fn(tol)
        ok, worst, n, det = tally.result(suite, name)
    except WrightError as e:
        ok, worst, n, det = False, math.inf, 0, f"{type(e).__name__}: {e}"
    return CheckResult(suite, name, ok, worst, n, det, time.perf_counter() - t0)


def run_suite(suite: str, tol: float | None = None, on_result=None) -> list[CheckResult]:
    if suite not in SUITE_NAMES:
        raise DomainError(f"unknown suite {suite!r}; expected one of {SUITE_NAMES}")
    names = [s for s in SUITE_NAMES[:-1]] if suite == "all" else [suite]
    out = []
    for s in names:
        for name in check_names(s):
            r = run_check(s, name, tol)
            out.append(r)
            if on_result is not None:
                on_result(r)
    return out
