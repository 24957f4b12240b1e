import csv
import math
import io
import json
import subprocess
import sys

import pytest

from wrightlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestEval:
    def test_table_value(self, capsys):
        code, out, _ = run(capsys, "eval", "--fn", "psi11", "--rho", "0.5", "--k", "20",
                           "--x", "20", "--normalized", "--method", "series")
        assert code == 0
        (r,) = rows(out)
        assert r["method"] == "series" and r["value"].startswith("1.373292")

    def test_all_methods_agree(self, capsys):
        code, out, _ = run(capsys, "eval", "--fn", "phi", "--rho", "-0.5", "--x", "-2",
                           "--method", "all")
        assert code == 0
        rs = rows(out)
        vals = {r["method"]: float(r["value"]) for r in rs if not r["method"].startswith("reldiff")}
        assert vals["series"] == pytest.approx(math.exp(-1) / math.sqrt(math.pi), rel=1e-8)
        assert vals["closed"] == pytest.approx(vals["series"], rel=1e-12)
        diffs = [float(r["value"]) for r in rs if r["method"].startswith("reldiff:")]
        n = len(vals)
        assert len(diffs) == n * (n - 1) // 2 and max(diffs) < 1e-10

    def test_non_integer_k_negative_rho(self, capsys):
        code, _, err = run(capsys, "eval", "--fn", "psi11", "--rho", "-0.5", "--k", "1.3", "--x", "1")
        assert code == 2 and "integer k" in err

    def test_invalid_rho(self, capsys):
        code, _, err = run(capsys, "eval", "--fn", "phi", "--rho", "-1.5", "--x", "1")
        assert code == 2 and "rho" in err

    def test_method_not_applicable(self, capsys):
        code, _, _ = run(capsys, "eval", "--fn", "phi", "--rho", "0.4", "--x", "1", "--method", "closed")
        assert code == 2

    def test_numerical_failure(self, capsys, monkeypatch):
        monkeypatch.setenv("WRIGHTLAB_MAX_TERMS", "3")
        code, _, err = run(capsys, "eval", "--fn", "phi", "--rho", "0.5", "--x", "30")
        assert code == 3 and "numerical failure" in err

    def test_fraction_input_and_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--fn", "psi11", "--rho", "-1/3", "--k", "3", "--x", "-2",
                           "--method", "poly", "--format", "json")
        assert code == 0
        (r,) = json.loads(out)
        assert set(r) == {"method", "value", "est_error", "regime", "wall_ns"}
        assert float(r["value"]) == pytest.approx(0.26064573067792072, rel=1e-8)


class TestCoeffs:
    def values(self, out):
        return [r["exact"] for r in rows(out)]

    def test_d(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--which", "d", "--rho", "1", "--k", "4")
        assert code == 0 and self.values(out) == ["1", "12", "36", "24"]

    def test_b(self, capsys):
        _, out, _ = run(capsys, "coeffs", "--which", "b", "--rho", "1", "--n", "4")
        assert self.values(out) == ["1", "1/2", "1/8", "0"]

    def test_c(self, capsys):
        _, out, _ = run(capsys, "coeffs", "--which", "c", "--rho", "-0.5", "--n", "3")
        assert self.values(out) == ["1", "0", "0"]
        _, out, _ = run(capsys, "coeffs", "--which", "c", "--rho", "-1/3", "--n", "2")
        assert self.values(out) == ["1", "5/72"]

    def test_range_error(self, capsys):
        code, _, _ = run(capsys, "coeffs", "--which", "b", "--rho", "1", "--n", "9")
        assert code == 2


class TestTable:
    def test_columns_and_rows(self, capsys, tmp_path):
        path = tmp_path / "t2.csv"
        code, _, _ = run(capsys, "table", "--id", "2", "--out", str(path))
        text = path.read_text()
        rs = rows(text)
        assert list(rs[0]) == ["k", "params", "value", "approx", "rel_error", "paper_value",
                               "paper_error", "value_match", "error_match"]
        assert len(rs) == 20
        first = rs[0]
        assert first["params"] == "x=1;rho=1/2"
        assert first["value"] == "6.966593e+01" and first["rel_error"].startswith("1.1169")
        failing = any(r["value_match"] != "true" or r["error_match"] != "true" for r in rs)
        assert code == (3 if failing else 0)

    def test_table1_first_row(self, capsys):
        _, out, _ = run(capsys, "table", "--id", "1")
        r = rows(out)[0]
        assert r["k"] == "20" and r["value"] == "1.373292e+18"
        assert float(r["rel_error"]) == pytest.approx(1.237e-2, rel=2e-2)

    def test_last_row_of_table2(self, capsys):
        _, out, _ = run(capsys, "table", "--id", "2")
        r = rows(out)[-1]
        assert r["k"] == "1000" and r["params"] == "x=10;rho=3/2"
        assert r["value"] == "2.474393e+143"
        assert r["value_match"] == ("true" if r["paper_value"] == r["value"] else "false")
        assert float(r["rel_error"]) == pytest.approx(4.273e-2, rel=2e-2)

    def test_deterministic_bytes(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "table", "--id", "1", "--out", str(a))
        run(capsys, "table", "--id", "1", "--out", str(b))
        raw = a.read_bytes()
        assert raw == b.read_bytes() and b"\r" not in raw


class TestVerify:
    def test_coeffs_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "coeffs")
        assert "c_j(-1/3): polynomial route equals gamma-ratio closed form" in out
        failed = "FAIL [" in out
        assert code == (1 if failed else 0)

    def test_identities_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "identities", "--format", "csv")
        rs = rows(out)
        names = [r["name"] for r in rs]
        assert any("rho=-1/2 Bessel" in n for n in names)
        assert code == (0 if all(r["passed"] == "true" for r in rs) else 1)

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["verify", "--suite", "nope"])
        assert info.value.code == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "wrightlab", "coeffs", "--which", "d", "--rho", "1/2",
                        "--k", "2"], capture_output=True, text=True)
    assert p.returncode == 0
    assert p.stdout.splitlines()[-1].endswith(",3/2")
