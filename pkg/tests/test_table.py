import pytest

from hsx.table import EFF_ROWS, Row, default_rows, row_for, run_row, run_table


def test_rows_cover_the_table():
    labels = {r.label for r in EFF_ROWS}
    for n in range(1, 9):
        assert f"P^{n}" in labels
    for m in range(3, 11):
        assert f"Q^{m}" in labels
    for n in range(4, 9):
        assert f"G(2,{n})" in labels
    assert {"G_Q(2,8)", "G_Q(2,10)", "F4/P1", "F4/P4", "G2/P1", "G2/P2", "E6/P1"} <= labels
    big = {r.descriptor for r in EFF_ROWS if r.big}
    assert big == {"E7/P1", "E7/P6", "E7/P7", "E8/P1", "E8/P7", "E8/P8"}
    assert not any(r.big for r in default_rows())


def test_expected_rules():
    assert Row("x", "E7/P6", "dim-8").expected(42) == 34
    assert Row("x", "A3/P1", "1").expected(3) == 1


def test_row_lookup():
    assert row_for("A3/P1").label == "P^3"
    assert row_for("D3/P1").label == "Q^4"
    assert row_for("B6/P3").rule == "dim-4"


def test_errors_reported_inline():
    res = run_row(Row("bad", "A3/P1,2", "0"))
    assert not res.passed and "NotPicardRankOne" in res.error
    assert res.to_dict()["status"] == "FAIL"


@pytest.mark.parametrize("desc", ["A3/P1", "D3/P1", "C4/P2"])
def test_single_rows(desc):
    assert run_row(row_for(desc)).passed


def test_parallel_matches_serial():
    rows = default_rows()[:6]
    serial = [r.to_dict() for r in run_table(rows)]
    parallel = [r.to_dict() for r in run_table(rows, workers=2)]
    assert serial == parallel
