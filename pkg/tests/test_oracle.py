from math import factorial

import pytest

from latin_census import oracle
from latin_census.errors import BudgetExceeded

L = [1, 2, 12, 576, 161280]


@pytest.mark.parametrize("m,n", [(m, n) for n in range(1, 6) for m in range(1, n + 1)])
def test_search_orders_agree(m, n):
    fast = oracle.brute_reduced_rectangles(m, n)
    assert fast == oracle.plain_reduced_rectangles(m, n) == oracle.columnwise_reduced_rectangles(m, n)


@pytest.mark.parametrize("n", range(1, 6))
def test_latin_squares(n):
    assert oracle.brute_latin_squares(n) == factorial(n) * oracle.brute_reduced_rectangles(n, n) == L[n - 1]


@pytest.mark.parametrize("n", range(1, 5))
def test_unrestricted_enumeration(n):
    assert oracle.unrestricted_latin_squares(n) == L[n - 1]


def test_two_rows_are_derangements():
    for n in range(2, 9):
        assert oracle.brute_reduced_rectangles(2, n) == oracle.brute_derangements(n)


def test_parallel_split_matches():
    assert oracle.brute_reduced_rectangles(4, 6, jobs=3) == oracle.brute_reduced_rectangles(4, 6)


def test_very_reduced_is_monotone_in_constraints():
    for n in range(3, 8):
        assert oracle.brute_very_reduced(1, n) == oracle.brute_derangements(n)
        assert oracle.brute_very_reduced(2, n) <= oracle.brute_very_reduced(1, n)


def test_witness_is_reduced_latin():
    rect = oracle.first_witness(3, 5)
    assert rect[0] == (1, 2, 3, 4, 5)
    assert all(sorted(row) == [1, 2, 3, 4, 5] for row in rect)
    assert all(len({row[j] for row in rect}) == 3 for j in range(5))


def test_argument_checks_and_budget():
    with pytest.raises(ValueError):
        oracle.brute_reduced_rectangles(4, 3)
    with pytest.raises(ValueError):
        oracle.brute_very_reduced(3, 3)
    with pytest.raises(BudgetExceeded) as info:
        oracle.brute_reduced_rectangles(5, 9)
    assert "estimated work" in str(info.value)
    with pytest.raises(BudgetExceeded):
        oracle.brute_derangements(12)
