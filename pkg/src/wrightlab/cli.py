"""wrightlab command line: eval, table, coeffs, verify.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
import time
from fractions import Fraction

from . import asymptotics as asy
from . import closed_forms as cf
from . import integral_reps as ir
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
from .specfun import ln_gamma, nearest_int
from .tables import reproduce
from .verify import SUITE_NAMES, run_suite
from .wright_core import PhiParams, WrightParams, phi_series_lsr, psi11_series

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
INPUT_ERRORS = (DomainError, RangeError, UnsupportedError)
NUMERIC_ERRORS = (ConvergenceError, AccuracyError, NumericOverflowError, ArithmeticError)

EVAL_FIELDS = ("method", "value", "est_error", "regime", "wall_ns")
TABLE_FIELDS = ("k", "params", "value", "approx", "rel_error", "paper_value", "paper_error",
                "value_match", "error_match")
COEFF_FIELDS = ("j", "value", "exact")
VERIFY_FIELDS = ("suite", "name", "passed", "worst", "points", "detail")

PSI11_METHODS = ("series", "poly", "closed", "saddle", "largek", "algebraic", "regime",
                 "quad:mixing", "quad:k-whittaker")
PHI_METHODS = ("series", "closed", "regime", "quad:branch-cut", "quad:mikusinski")


def _number(text: str) -> Fraction:
    """Decimal or p/q text as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _sci(v: float, digits: int = 9) -> str:
    if v is None:
        return ""
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return LogScaledReal.from_float(v).format(digits)


# -- eval -------------------------------------------------------------------------------

class _Inputs:
    def __init__(self, args):
        self.fn = args.fn
        self.rho_q = args.rho
        self.rho = float(args.rho)
        self.k_q = args.k
        self.k = None if args.k is None else float(args.k)
        self.delta = float(args.delta)
        self.x = float(args.x)
        self.tol = args.tol
        self.normalized = args.normalized

    def need_delta0(self):
        if self.delta != 0.0:
            raise DomainError("this method covers delta = 0 only")

    def need_int_k(self, low: int = 1) -> int:
        k = nearest_int(self.k)
        if k is None or k < low:
            raise DomainError(f"this method needs an integer k >= {low}, got {self.k}")
        return k


def _psi11_method(inp: _Inputs, method: str) -> MethodReport:
    rho, k, x = inp.rho, inp.k, inp.x
    WrightParams(rho, k, inp.delta, x)  # shared validation
    if method == "series":
        return MethodReport("series", psi11_series(rho, k, inp.delta, x))
    inp.need_delta0()
    if method == "poly":
        return MethodReport("poly", cf.psi11_polynomial(inp.rho_q, inp.need_int_k(), x))
    if method == "closed":
        key = cf.closed_rho_key(rho)
        if key == 1.0:
            return MethodReport("closed", cf.psi11_rho1(inp.need_int_k(), x))
        if key == -0.5:
            sign = "+" if x >= 0 else "-"
            if nearest_int(k) is not None:
                v = cf.psi11_half_integer_neg(nearest_int(k), abs(x), sign)
            else:
                v = cf.psi11_nonint_k_neg_half(k, abs(x), sign)
            return MethodReport("closed", LogScaledReal.from_float(v))
        raise DomainError("closed forms of 1Psi1 exist for rho = 1 and rho = -1/2 only")
    if method == "saddle":
        return MethodReport("saddle", asy.psi11_saddle_approx(rho, k, x))
    if method == "largek":
        return MethodReport("largek", asy.psi11_largek_smallx(rho, k, x, 3))
    if method == "algebraic":
        return asy.psi11_algebraic_report(rho, k, x)
    if method == "regime":
        if not -1 < rho < 0:
            raise DomainError("the large-k regime form needs rho in (-1, 0)")
        if k <= 0:
            raise DomainError("k must be positive")
        v = LogScaledReal.from_float(asy.psi11_negrho_largek(rho, k, x))
        # returned already divided by Gamma(k)
        return MethodReport("regime:negrho-largek", v * LogScaledReal(1, ln_gamma(k)),
                            regime="large-k")
    if method == "quad:mixing":
        if x == 0 or (x > 0) != (rho > 0):
            raise DomainError("the mixing relation needs sign(x) = sign(rho)")
        r = ir.mixing_relation_rhs(rho, k, abs(x), tol=inp.tol)
        return MethodReport("quad:mixing", LogScaledReal.from_float(r.value), r.abs_err_estimate)
    if method == "quad:k-whittaker":
        key = cf.closed_rho_key(rho)
        if key not in (-1 / 3, -2 / 3) or not x < 0:
            raise DomainError("the K/Whittaker integrals need rho = -1/3 or -2/3 and x < 0")
        variant = "1/3" if key == -1 / 3 else "2/3"
        r = ir.theorem1_rhs(variant, inp.need_int_k(), -x, tol=inp.tol)
        return MethodReport("quad:k-whittaker", LogScaledReal.from_float(r.value), r.abs_err_estimate)
    raise DomainError(f"unknown method {method!r}")


def _phi_method(inp: _Inputs, method: str) -> MethodReport:
    rho, x = inp.rho, inp.x
    PhiParams(rho, inp.delta, x)
    if method == "series":
        return MethodReport("series", phi_series_lsr(rho, inp.delta, x))
    inp.need_delta0()
    if method == "closed":
        return MethodReport("closed", LogScaledReal.from_float(cf.phi_closed(rho, x)))
    if method == "regime":
        if rho > 0:
            return asy.phi_asym_pos_rho_report(rho, x)
        if x > 0:
            return asy.phi_asym_neg_rho_pos_x(-rho, x)
        if x < 0:
            return MethodReport("regime:neg-x", asy.phi_asym_neg_rho_neg_x_lsr(-rho, -x),
                                regime="exp-small")
        raise DomainError("x must be non-zero")
    if method in ("quad:branch-cut", "quad:mikusinski"):
        if rho >= 0:
            raise DomainError("the integral forms need rho in (-1, 0)")
        if x == 0:
            raise DomainError("x must be non-zero")
        if method == "quad:branch-cut":
            r = ir.phi_real_integral(-rho, abs(x), "+" if x > 0 else "-", tol=inp.tol)
            return MethodReport(method, LogScaledReal.from_float(r.value), r.abs_err_estimate)
        if x > 0:
            raise DomainError("the Mikusinski integral covers x < 0 only")
        return MethodReport(method, ir.phi_mikusinski_lsr(-rho, -x, tol=inp.tol))
    raise DomainError(f"unknown method {method!r}")


def _timed(fn, inp, method) -> MethodReport:
    t0 = time.perf_counter_ns()
    rep = fn(inp, method)
    wall = time.perf_counter_ns() - t0
    return MethodReport(rep.method, rep.value, rep.est_error, rep.regime, wall, rep.extra)


def _normalize(rep: MethodReport, k: float) -> MethodReport:
    lg = ln_gamma(k)
    v = rep.value
    val = LogScaledReal(v.sign, v.log_abs - lg if v.sign else -math.inf)
    err = None if rep.est_error is None else rep.est_error * math.exp(-lg)
    return MethodReport(rep.method, val, err, rep.regime, rep.wall_ns, rep.extra)


def _eval_rows(args) -> tuple[list[dict], int]:
    inp = _Inputs(args)
    if inp.fn == "psi11":
        if inp.k is None:
            raise DomainError("--k is required for psi11")
        fn, menu = _psi11_method, PSI11_METHODS
    else:
        if args.k is not None:
            raise DomainError("--k does not apply to phi")
        if args.normalized:
            raise DomainError("--normalized applies to psi11 only")
        fn, menu = _phi_method, PHI_METHODS
    if inp.normalized and not inp.k > 0:
        raise DomainError("normalization by Gamma(k) needs k > 0")
    code = EXIT_OK
    reports = []
    if args.method == "all":
        # bad shared parameters must not be mistaken for "no method applies"
        if inp.fn == "psi11":
            WrightParams(inp.rho, inp.k, inp.delta, inp.x)
        else:
            PhiParams(inp.rho, inp.delta, inp.x)
        failed = []
        for m in menu:
            try:
                reports.append(_timed(fn, inp, m))
            except INPUT_ERRORS:
                continue
            except NUMERIC_ERRORS as e:
                failed.append((m, e))
        if failed:
            code = EXIT_NUMERIC
            for m, e in failed:
                print(f"wrightlab: {m}: {type(e).__name__}: {e}", file=sys.stderr)
    else:
        if args.method not in menu:
            raise DomainError(f"method {args.method!r} not available for {inp.fn}; choose from "
                              + ", ".join(menu + ("all",)))
        reports.append(_timed(fn, inp, args.method))
    if inp.normalized:
        reports = [_normalize(r, inp.k) for r in reports]
    rows = [{"method": r.method, "value": r.value.format(9),
             "est_error": "" if r.est_error is None else _sci(r.est_error),
             "regime": r.regime, "wall_ns": str(r.wall_ns)} for r in reports]
    if args.method == "all":
        for a, b in itertools.combinations(reports, 2):
            rows.append({"method": f"reldiff:{a.method}|{b.method}",
                         "value": _sci(a.value.rel_diff(b.value)),
                         "est_error": "", "regime": "", "wall_ns": ""})
    return rows, code


# -- output ----------------------------------------------------------------------------

def _emit(rows: list[dict], fields, fmt: str, out=None) -> None:
    stream = out or sys.stdout
    if fmt == "json":
        stream.write(json.dumps([{f: r[f] for f in fields} for r in rows], indent=2) + "\n")
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({f: r[f] for f in fields})
    stream.write(buf.getvalue())


def _write(rows, fields, fmt, path):
    if path is None:
        _emit(rows, fields, fmt)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        _emit(rows, fields, fmt, fh)


# -- commands ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    rows, code = _eval_rows(args)
    _emit(rows, EVAL_FIELDS, args.format)
    return code


def table_rows(table_id: int) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for r in reproduce(table_id):
        ok = ok and r.ok
        rows.append({
            "k": str(r.printed.k),
            "params": r.printed.params,
            "value": r.value.format(7),
            "approx": r.approx.format(7),
            "rel_error": _sci(r.rel_error, 7),
            "paper_value": _sci(r.printed.value, 7),
            "paper_error": _sci(r.printed.error, 7),
            "value_match": str(r.value_match).lower(),
            "error_match": str(r.error_match).lower(),
        })
    return rows, ok


def cmd_table(args) -> int:
    rows, ok = table_rows(args.id)
    _write(rows, TABLE_FIELDS, args.format, args.out)
    if not ok:
        bad = sum(1 for r in rows if r["value_match"] != "true" or r["error_match"] != "true")
        print(f"wrightlab: {bad} of {len(rows)} rows disagree with the printed table",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def coeff_rows(which: str, rho: Fraction, k: Fraction | None, n: int | None) -> list[dict]:
    if which == "d":
        if k is None:
            raise DomainError("--k is required for d coefficients")
        if k.denominator != 1:
            raise DomainError(f"k must be a positive integer, got {k}")
        poly = cf.d_coeffs(rho, int(k))
        vals, exact = poly.coeffs, poly.exact
    else:
        if n is None:
            raise DomainError(f"--n is required for {which} coefficients")
        table = asy.b_coeffs(rho, n) if which == "b" else asy.c_coeffs(rho, n)
        vals, exact = table.values, table.exact
    return [{"j": str(j), "value": _sci(float(v)), "exact": str(e)}
            for j, (v, e) in enumerate(zip(vals, exact))]


def cmd_coeffs(args) -> int:
    _emit(coeff_rows(args.which, args.rho, args.k, args.n), COEFF_FIELDS, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    fmt = args.format

    def show(r):
        if fmt == "text":
            print(r.line(), flush=True)

    results = run_suite(args.suite, tol=args.tol, on_result=show)
    failed = [r for r in results if not r.passed]
    if fmt == "text":
        print(f"{len(results) - len(failed)} passed, {len(failed)} failed")
    else:
        rows = [{"suite": r.suite, "name": r.name, "passed": str(r.passed).lower(),
                 "worst": _sci(r.worst), "points": str(r.points), "detail": r.detail}
                for r in results]
        _emit(rows, VERIFY_FIELDS, fmt)
    return EXIT_VERIFY if failed else EXIT_OK


# -- parser -----------------------------------------------------------------------------

def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wrightlab",
                                description="Wright function 1Psi1 and phi by independent methods.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate 1Psi1 or phi by one or all methods")
    e.add_argument("--fn", choices=("psi11", "phi"), required=True)
    e.add_argument("--rho", type=_number, required=True)
    e.add_argument("--k", type=_number)
    e.add_argument("--delta", type=_number, default=Fraction(0))
    e.add_argument("--x", type=_number, required=True)
    e.add_argument("--method", default="series",
                   help="series, poly, closed, saddle, largek, algebraic, regime, quad:<id> or all")
    e.add_argument("--normalized", action="store_true", help="divide 1Psi1 by Gamma(k)")
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.add_argument("--tol", type=_positive, default=1e-9, help="quadrature tolerance")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", help="reproduce a printed large-k table")
    t.add_argument("--id", type=int, choices=(1, 2), required=True)
    t.add_argument("--out", help="output path (default stdout)")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("coeffs", help="print D, B or c coefficients")
    c.add_argument("--which", choices=("d", "b", "c"), required=True)
    c.add_argument("--rho", type=_number, required=True)
    c.add_argument("--k", type=_number)
    c.add_argument("--n", type=int)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.set_defaults(func=cmd_coeffs)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", choices=SUITE_NAMES, default="all")
    v.add_argument("--tol", type=_positive)
    v.add_argument("--format", choices=("text", "csv", "json"), default="text")
    v.set_defaults(func=cmd_verify)
    return p


_NUMERIC_OPTS = ("--rho", "--k", "--delta", "--x", "--tol")


def _glue_negatives(argv: list[str]) -> list[str]:
    # argparse takes "-1/3" for an option; "--rho=-1/3" is unambiguous
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _NUMERIC_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negatives(argv))
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        print(f"wrightlab: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (WrightError, *NUMERIC_ERRORS) as e:
        print(f"wrightlab: numerical failure: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
