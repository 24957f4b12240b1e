import pytest

from wrightlab.errors import DomainError
from wrightlab.logscale import LogScaledReal
from wrightlab.tables import TABLE1, TABLE2, compute_row, digits_agree, reproduce


def _id(row):
    return f"t{row.table}-k{row.k}-{row.params}"


@pytest.mark.parametrize("row", TABLE1 + TABLE2, ids=_id)
def test_printed_value(row):
    r = compute_row(row)
    assert r.value_match, f"{r.value.format(7)} vs printed {row.value:.6e}"


@pytest.mark.parametrize("row", TABLE1 + TABLE2, ids=_id)
def test_printed_error(row):
    r = compute_row(row)
    assert r.error_match, f"{r.rel_error:.4e} vs printed {row.error:.3e}"


def test_shapes():
    assert len(TABLE1) == 10 and len(TABLE2) == 20
    assert all(r.x == r.k * r.u for r in TABLE1)
    assert TABLE1[0].params == "u=1;rho=1/2"
    assert TABLE2[-1].params == "x=10;rho=3/2"


def test_digits_agree():
    v = LogScaledReal.from_float(1.3732920306e18)
    assert digits_agree(v, 1.373292e18, 6)
    assert not digits_agree(v, 1.373302e18, 6)
    assert not digits_agree(-v, 1.373292e18, 6)


def test_reproduce_bad_id():
    with pytest.raises(DomainError):
        reproduce(3)
