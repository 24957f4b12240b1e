"""Result records shared by the asymptotic, quadrature and CLI layers."""
from __future__ import annotations

from dataclasses import dataclass, field

from .logscale import LogScaledReal


@dataclass(frozen=True)
class MethodReport:
    """One evaluation of a quantity by a named method.

    method is one of series, poly, closed, saddle, largek, algebraic,
    regime:<name> or quad:<id>.
    """

    method: str
    value: LogScaledReal
    est_error: float | None = None
    regime: str = ""
    wall_ns: int = 0
    extra: dict = field(default_factory=dict, compare=False)

    def to_float(self, strict: bool = False) -> float:
        return self.value.to_float(strict=strict)
