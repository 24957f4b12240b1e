"""Reals stored as sign and log-magnitude, plus a log-space series accumulator."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericOverflowError

_LOG_MAX = math.log(1.7976931348623157e308)


@dataclass(frozen=True)
class LogScaledReal:
    """Value = sign * exp(log_abs).  sign is -1, 0 or +1."""

    sign: int
    log_abs: float

    @classmethod
    def from_float(cls, x: float) -> "LogScaledReal":
        if x == 0.0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def zero(cls) -> "LogScaledReal":
        return cls(0, -math.inf)

    def to_float(self, strict: bool = True) -> float:
        if self.sign == 0:
            return 0.0
        if self.log_abs > _LOG_MAX:
            if strict:
                raise NumericOverflowError(
                    f"value exp({self.log_abs:.6g}) overflows a double")
            return math.copysign(math.inf, self.sign)
        return self.sign * math.exp(self.log_abs)

    def __float__(self) -> float:
        return self.to_float()

    def __mul__(self, other):
        if isinstance(other, LogScaledReal):
            s = self.sign * other.sign
            return LogScaledReal(s, self.log_abs + other.log_abs if s else -math.inf)
        return self * LogScaledReal.from_float(float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogScaledReal):
            other = LogScaledReal.from_float(float(other))
        if other.sign == 0:
            raise ZeroDivisionError("division by zero LogScaledReal")
        s = self.sign * other.sign
        return LogScaledReal(s, self.log_abs - other.log_abs if s else -math.inf)

    def __neg__(self):
        return LogScaledReal(-self.sign, self.log_abs)

    def log10_abs(self) -> float:
        return self.log_abs / math.log(10.0)

    def rel_diff(self, other: "LogScaledReal") -> float:
        """|self - other| / |other| computed without overflow."""
        if other.sign == 0:
            return 0.0 if self.sign == 0 else math.inf
        if self.sign != other.sign:
            return 1.0 + math.exp(min(self.log_abs - other.log_abs, 700.0))
        return abs(math.expm1(self.log_abs - other.log_abs))

    def format(self, digits: int = 7) -> str:
        """Scientific notation with ``digits`` significant digits, any magnitude."""
        if self.sign == 0:
            return f"{0.0:.{digits - 1}e}"
        l10 = self.log10_abs()
        e = math.floor(l10)
        mant = 10.0 ** (l10 - e)
        text = f"{mant:.{digits - 1}f}"
        if float(text) >= 10.0:
            e += 1
            text = f"{mant / 10.0:.{digits - 1}f}"
        sign = "-" if self.sign < 0 else ""
        return f"{sign}{text}e{'+' if e >= 0 else '-'}{abs(e):02d}"

    def __str__(self):
        return self.format(9)


class LogSeriesAccumulator:
    """Collects terms given as (sign, log|t|) and sums them stably.

    Tracks the running sum magnitude for stopping decisions and the
    condition number sum|t| / |sum t| of the final result.
    """

    __slots__ = ("_terms", "_max_log", "_run")

    def __init__(self):
        self._terms: list[tuple[int, float]] = []
        self._max_log = -math.inf
        self._run = 0.0  # running sum scaled by exp(-_max_log)

    def add(self, sign: int, log_abs: float) -> None:
        if sign == 0:
            return
        self._terms.append((sign, log_abs))
        if log_abs > self._max_log:
            if self._max_log > -math.inf:
                self._run *= math.exp(self._max_log - log_abs)
            self._max_log = log_abs
        self._run += sign * math.exp(log_abs - self._max_log)

    @property
    def max_log(self) -> float:
        return self._max_log

    def running_log_abs(self) -> float:
        if self._run == 0.0:
            return -math.inf
        return math.log(abs(self._run)) + self._max_log

    def result(self) -> tuple[LogScaledReal, float]:
        """Return (sum, condition number)."""
        if not self._terms:
            return LogScaledReal.zero(), 1.0
        m = self._max_log
        signed = math.fsum(s * math.exp(l - m) for s, l in self._terms)
        absolute = math.fsum(math.exp(l - m) for _, l in self._terms)
        if signed == 0.0:
            return LogScaledReal.zero(), math.inf
        cond = absolute / abs(signed)
        return LogScaledReal(1 if signed > 0 else -1, math.log(abs(signed)) + m), cond
