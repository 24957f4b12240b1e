"""Adaptive quadrature on (0, inf) driven by a decay hint.

The integrand is probed on a logarithmic grid to locate its mass, the
infinite range is cut where the hinted tail bound drops below tol*mass/10,
and the remainder is integrated piecewise with QUADPACK.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
import numpy as np
from scipy import integrate

from .errors import AccuracyError, DomainError

DECAYS = ("exponential", "gaussian", "algebraic")
NOISE = 1e-13  # relative accuracy assumed for integrand values


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_err_estimate: float
    evaluations: int
    truncation_point: float

    def __post_init__(self):
        if not self.abs_err_estimate >= 0:
            raise ValueError("abs_err_estimate must be non-negative")

    def scaled(self, factor: float) -> "QuadResult":
        a = abs(factor)
        return QuadResult(self.value * factor, self.abs_err_estimate * a,
                          self.evaluations, self.truncation_point)


class _Counted:
    def __init__(self, f):
        self.f = f
        self.n = 0

    def __call__(self, t):
        self.n += 1
        v = self.f(t)
        if not math.isfinite(v):
            raise AccuracyError(f"integrand is not finite at t={t!r}")
        return v


def _parse_decay(decay, power):
    if isinstance(decay, tuple):
        decay, power = decay
    if decay not in DECAYS:
        raise DomainError(f"unknown decay hint {decay!r}; expected one of {DECAYS}")
    if decay == "algebraic" and not (power is not None and power > 1):
        raise DomainError("algebraic decay needs a power p > 1")
    return decay, power


def _envelope(w: np.ndarray) -> np.ndarray:
    # running maximum from the right: a monotone bound that ignores zeros of oscillation
    return np.maximum.accumulate(w[::-1])[::-1]


def _tail_bound(decay, power, t, env, i):
    """Hinted bound on int_{t_i}^inf |f| from the envelope of |f|."""
    ft = env[i] / t[i]
    if decay == "algebraic":
        return ft * t[i] / (power - 1)
    if i + 1 >= len(t) or env[i + 1] <= 0:
        return ft * (t[i] if i + 1 >= len(t) else t[i + 1] - t[i])
    lam = math.log(env[i] / t[i] * t[i + 1] / env[i + 1]) / (t[i + 1] - t[i])
    if lam <= 0:
        return math.inf
    return ft / lam


def _probe(f, scale: float, per_decade: int, lo_dec: float, hi_dec: float):
    t = scale * np.logspace(lo_dec, hi_dec, int(round((hi_dec - lo_dec) * per_decade)) + 1)
    w = np.empty_like(t)
    for i, ti in enumerate(t):
        try:
            w[i] = abs(f(float(ti))) * ti
        except (OverflowError, ValueError, ArithmeticError):
            w[i] = math.inf
    return t, w


def _piece(f, a, b, epsabs, epsrel, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
    return val, err


def _piece_sqrt(f, b, epsabs, epsrel, limit):
    # t = v^2 near the origin tames t^(-1/2)-type endpoint behaviour
    g = lambda v: 2.0 * v * f(v * v) if v > 0 else 0.0
    return _piece(g, 0.0, math.sqrt(b), epsabs, epsrel, limit)


def quad_semi_infinite(
    f: Callable[[float], float],
    decay="exponential",
    tol: float = 1e-10,
    *,
    power: float | None = None,
    scale: float = 1.0,
    points: Sequence[float] = (),
    period: Callable[[float], float] | None = None,
    noise: float = NOISE,
    limit: int = 200,
) -> QuadResult:
    """Integral of f over (0, inf).

    ``decay`` is "exponential", "gaussian" or "algebraic" (with ``power`` p,
    or passed as ("algebraic", p)).  ``scale`` is a rough size of the region
    holding the mass.  ``period`` returns the local oscillation length, used
    to split the range so that cancellation happens between short pieces.
    Success means abs_err_estimate <= tol * max(1, |value|); otherwise
    AccuracyError is raised with the QuadResult in ``best``.
    """
    decay, power = _parse_decay(decay, power)
    if not (tol > 0 and scale > 0):
        raise DomainError("tol and scale must be positive")
    g = _Counted(f)
    per_dec = 16 if decay == "gaussian" else 10
    lo_dec, hi_dec = -8.0, 4.0
    t, w = _probe(g, scale, per_dec, lo_dec, hi_dec)
    if not np.all(np.isfinite(w)):
        bad = t[~np.isfinite(w)][0]
        raise AccuracyError(f"integrand is not finite at t={bad:.6g}")
    while True:
        env = _envelope(w)
        peak = float(w.max())
        if peak == 0.0:
            return QuadResult(0.0, 0.0, g.n, float(t[0]))
        mass = float(np.trapezoid(w, np.log(t)))
        ipk = int(np.argmax(w))
        cut = None
        for i in range(ipk, len(t)):
            if env[i] < 0.1 * tol * peak and _tail_bound(decay, power, t, env, i) < 0.1 * tol * mass:
                cut = i
                break
        if cut is not None:
            break
        if hi_dec >= 12.0:
            raise AccuracyError(f"integrand mass not exhausted by t={t[-1]:.3g}")
        t2, w2 = _probe(g, scale, per_dec, hi_dec + 1.0 / per_dec, hi_dec + 4.0)
        t, w = np.concatenate([t, t2]), np.concatenate([w, w2])
        hi_dec += 4.0
    T = float(t[cut])
    tail = _tail_bound(decay, power, t, env, cut)

    # first grid point carrying non-negligible mass starts the log-spaced pieces
    lead = int(np.argmax(env > 1e-3 * tol * peak)) if np.any(env > 1e-3 * tol * peak) else 0
    t0 = float(t[max(lead - 1, 0)])
    edges = [t0]
    nxt = t0 * 10.0
    while nxt < T:
        edges.append(nxt)
        nxt *= 10.0
    edges.append(T)
    extra = sorted(p for p in points if t0 < p < T)
    edges = sorted(set(edges) | set(extra))
    if period is not None:
        fine = [edges[0]]
        for a, b in zip(edges[:-1], edges[1:]):
            x = a
            while True:
                step = 4.0 * period(x)
                if not step > 0 or x + step >= b or len(fine) > 20000:
                    break
                x += step
                fine.append(x)
            fine.append(b)
        edges = fine

    budget = 0.1 * tol * max(mass, 1e-300) / max(len(edges), 1)
    epsrel = max(0.1 * tol, 1e-14)
    val0, err0 = _piece_sqrt(g, edges[0], budget, epsrel, limit)
    vals, errs = [val0], [err0]
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = _piece(g, a, b, budget, epsrel, limit)
        vals.append(v)
        errs.append(e)
    value = math.fsum(vals)
    err = math.fsum(errs) + tail + noise * mass
    res = QuadResult(value, float(err), g.n, T)
    if err > tol * max(1.0, abs(value)):
        raise AccuracyError(
            f"quadrature error estimate {err:.2e} exceeds tolerance {tol:.1e}", best=res)
    return res


def quad_finite(f, a: float, b: float, tol: float = 1e-10, *, points=(), limit: int = 200,
                noise: float = NOISE, positive: bool = False) -> QuadResult:
    """Integral of f over a finite interval with the same error accounting.

    ``positive`` skips the second pass that measures int |f| for the noise floor.
    """
    g = _Counted(f)
    pts = list(points) or None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(g, a, b, epsabs=0.0, epsrel=max(0.1 * tol, 1e-14),
                                  limit=limit, points=pts)
        if positive:
            absval = abs(val)
        else:
            absval, _ = integrate.quad(lambda t: abs(g(t)), a, b, epsabs=0.0, epsrel=1e-6,
                                       limit=limit, points=pts)
    err += noise * absval
    res = QuadResult(val, float(err), g.n, b)
    if err > tol * max(1.0, abs(val)):
        raise AccuracyError(f"quadrature error estimate {err:.2e} exceeds tolerance {tol:.1e}",
                            best=res)
    return res


def quad_oscillatory_sum(f, breaks: Callable[[int], float], tol: float = 1e-10,
                         n_max: int = 400, limit: int = 100) -> QuadResult:
    """Conditionally convergent integral over (breaks(0), inf).

    ``breaks(j)`` lists successive (roughly half-period) points; the partial
    integrals form an alternating sequence whose limit is extrapolated with
    Shanks' transformation.
    """
    g = _Counted(f)
    partial, s = [], 0.0
    est, err = math.nan, math.inf
    a = breaks(0)
    err_q = 0.0
    for j in range(1, n_max + 1):
        b = breaks(j)
        v, e = _piece(g, a, b, 0.0, 1e-13, limit)
        s += v
        err_q += e
        partial.append(s)
        a = b
        if j >= 26 and j % 8 == 0:
            # the epsilon table alternates in quality; compare estimates of equal parity
            with mpmath.workdps(30):
                est = float(mpmath.shanks(partial[-24:])[-1][-1])
                prev = float(mpmath.shanks(partial[-26:-2])[-1][-1])
            err = abs(est - prev) + err_q + NOISE * abs(est)
            if err <= tol * max(1.0, abs(est)):
                return QuadResult(est, err, g.n, b)
    res = QuadResult(est, err, g.n, b)
    raise AccuracyError("oscillatory extrapolation did not settle", best=res)
