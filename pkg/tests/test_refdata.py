import pytest

from simuorb import InvalidArgumentError, UnsupportedError, refdata


def test_checksums():
    refdata.verify_checksums()


def test_decagon():
    row = refdata.reference(10)
    assert (row.N_total, row.M_total) == (471, 32)


def test_icositetragon():
    row = refdata.reference(24)
    assert [row.a.get(k, 0) for k in (2, 3, 4, 5)] == [6144, 864, 264, 24]
    assert row.N_total == 21913


@pytest.mark.parametrize("n", [2, 31, 100])
def test_outside_range(n):
    assert refdata.reference(n) is None


def test_rows_are_consistent():
    for n in refdata.reference_range():
        assert refdata.reference(n).consistency_errors() == []


def test_printed_row_inconsistency_is_known():
    # the printed total of row 18 disagrees with its own parts
    assert refdata.reference(18, corrected=False).consistency_errors()


def test_errata_only_touch_listed_cells():
    fixed = {(e.n, e.column) for e in refdata.errata()}
    assert fixed == {(18, "M_total"), (23, "M_int"), (23, "M_total"), (25, "M_ext"), (25, "M_total")}
    for n in refdata.reference_range():
        a, b = refdata.reference(n), refdata.reference(n, corrected=False)
        for col in refdata.COUNT_COLUMNS:
            if (n, col) not in fixed:
                assert getattr(a, col) == getattr(b, col)


@pytest.mark.parametrize("n,value", [(3, 0), (5, 5), (13, 1235)])
def test_closed_form(n, value):
    assert refdata.exterior_closed_form(n) == value


def test_closed_form_rejects_even():
    with pytest.raises(UnsupportedError):
        refdata.exterior_closed_form(8)
    with pytest.raises(InvalidArgumentError):
        refdata.exterior_closed_form(1)


@pytest.mark.parametrize("n", range(3, 31))
def test_pipeline_matches_corrected_reference(n, summary_of):
    assert refdata.compare_row(summary_of(n), refdata.reference(n)) == []
