"""Wright function 1Psi1(rho, k; rho, delta; x) and reduced Wright function phi(rho, delta; x)."""
from .asymptotics import (
    b_coeffs,
    c_coeffs,
    phi_asym_neg_rho_neg_x,
    phi_asym_neg_rho_pos_x,
    phi_asym_pos_rho,
    psi11_algebraic_expansion,
    psi11_largek_smallx,
    psi11_negrho_largek,
    psi11_saddle_approx,
    solve_saddle,
    theorem6_ratio,
)
from .closed_forms import d_coeffs, phi_closed, psi11_polynomial, psi11_rho1
from .errors import (
    AccuracyError,
    ConvergenceError,
    DomainError,
    NumericOverflowError,
    RangeError,
    UnsupportedError,
    WrightError,
)
from .logscale import LogScaledReal
from .report import MethodReport
from .wright_core import (
    PhiParams,
    WrightParams,
    phi_series,
    phi_series_lsr,
    psi11_normalized,
    psi11_series,
)

__version__ = "0.1.0"
