import pytest

from fractions import Fraction

from dergraph.derangements import (
    DerangementTable,
    derangement_count,
    derangements_by_inclusion_exclusion,
    derangements_by_two_term,
    derangements_by_series,
    verify_identities,
    e_inverse_interval,
    nearest_integer_characterization,
)


@pytest.mark.parametrize(
    "n,expected",
    [(0, 1), (1, 0), (2, 1), (3, 2), (4, 9), (5, 44), (6, 265), (7, 1854), (8, 14833)],
)
def test_small_values(n, expected) -> None:
    assert derangement_count(n) == expected


def test_negative_degree() -> None:
    with pytest.raises(ValueError):
        derangement_count(-1)


def test_formulas_agree_up_to_200() -> None:
    for n in range(201):
        d_n = derangement_count(n)
        assert derangements_by_inclusion_exclusion(n) == d_n
        assert derangements_by_two_term(n) == d_n
        assert derangements_by_series(n) == d_n


def test_verify_identities() -> None:
    report = verify_identities(200)
    assert report.ok, report.violations


def test_verify_identities_cross_checks_series(monkeypatch) -> None:
    from dergraph import derangements

    monkeypatch.setattr(
        derangements,
        "derangements_by_series",
        lambda n: derangement_count(n) + (n == 7),
    )
    assert verify_identities(10).violations == [(7, "truncated series")]
    assert verify_identities(10, cross_check=False).ok


@pytest.mark.parametrize("n", [1, *range(3, 201)])
def test_growth(n) -> None:
    # D_{n+1} = n (D_n + D_{n-1})
    assert derangement_count(n + 1) > n * derangement_count(n)


def test_growth_is_not_strict_at_two() -> None:
    assert derangement_count(3) == 2 * derangement_count(2)
    assert derangement_count(1) == 0 * derangement_count(0)


def test_table_invariants_catch_slow_growth() -> None:
    table = DerangementTable({3: 2, 4: 6})
    assert (4, "D_n > (n-1) D_{n-1}") in table.check_invariants()


def test_verify_identities_needs_two() -> None:
    with pytest.raises(ValueError):
        verify_identities(1)


def test_table_invariants_catch_bad_values() -> None:
    table = DerangementTable.up_to(10)
    assert table.check_invariants() == []

    table.values[5] = 45
    violated = {n for n, _ in table.check_invariants()}
    assert 5 in violated


def test_e_inverse_interval_brackets() -> None:
    lo, hi = e_inverse_interval(10)
    # 1/e = 0.36787944117...
    assert lo < Fraction(36787944117, 10**11) < hi
    assert hi - lo == 2 * Fraction(1, 39916800)


@pytest.mark.parametrize("n", range(3, 51))
def test_nearest_integer_characterization(n) -> None:
    assert nearest_integer_characterization(n)


def test_nearest_integer_needs_three() -> None:
    with pytest.raises(ValueError):
        nearest_integer_characterization(2)
