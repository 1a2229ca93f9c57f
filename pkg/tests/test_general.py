import itertools
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from latin_census import general
from latin_census.closed_forms import derangements, k3_yamamoto
from latin_census.errors import BudgetExceeded
from latin_census.general import (
    constraints_hold,
    enumerate_C,
    enumerate_R,
    k_general,
    term_context,
    term_value,
    variable_counts,
)

GRID = [(2, n) for n in range(2, 7)] + [(3, n) for n in range(3, 6)] + [(4, 4)]


@pytest.mark.parametrize("m,n", GRID)
def test_forms_agree_with_oracle(m, n, k_oracle):
    expected = k_oracle(m, n)
    for form in general.FORMS:
        assert k_general(m, n, form=form) == expected, form
    assert k_general(m, n, negbang=True) == expected


@pytest.mark.parametrize("n", range(0, 7))
def test_two_rows_are_derangements(n):
    assert k_general(2, n) == derangements(n)
    assert k_general(2, n, form="eq65") == derangements(n)


@pytest.mark.parametrize("n", range(0, 6))
def test_three_rows_match_closed_form(n):
    assert k_general(3, n) == k3_yamamoto(n)


def test_degenerate_cases():
    assert k_general(1, 5) == 1
    assert k_general(3, 0) == 1
    assert k_general(3, 2) == 0  # more rows than symbols


@pytest.mark.parametrize("m,n", [(2, 4), (3, 3), (3, 4)])
def test_sign_and_negbang_terms_agree(m, n):
    for R in enumerate_R(m, n):
        for C in enumerate_C(m, R):
            assert term_value(m, n, R, C, "eq56") == term_value(m, n, R, C, "eq56_negbang")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=6, max_size=6).filter(lambda r: sum(r) <= 4))
def test_solver_returns_exactly_the_balanced_maps(R):
    R = tuple(R)
    ctx = term_context(3)
    # every entry of a balanced C is at most sum(R)
    box = itertools.product(range(sum(R) + 1), repeat=ctx.size)
    assert set(enumerate_C(3, R)) == {C for C in box if constraints_hold(ctx, R, C)}


def test_term_value_is_rational():
    R = (1, 0, 0, 0, 0, 2)
    C = next(enumerate_C(3, R))
    assert isinstance(term_value(3, 3, R, C), Fraction)
    with pytest.raises(ValueError):
        term_value(3, 4, R, C)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_variable_family_sizes(m):
    counts = variable_counts(m)
    total = sum(comb(m, s) * factorial(s - 1) for s in range(1, m + 1))
    assert counts["R"] == factorial(m)
    assert counts["components"] == total
    assert counts["D"] == total - (m - 1)
    assert counts["C_minus_D"] == factorial(m) + m - 1 - total
    assert counts["F0"] == factorial(m - 1)
    assert counts["Fs"] == factorial(m - 2)
    assert counts["Rbar"] == factorial(m) - factorial(m - 1) - m * factorial(m - 2)


def test_four_rows_have_fifteen_independent_outer_variables():
    c = variable_counts(4)
    assert c["Rbar"] + 1 + 4 == 15


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as info:
        k_general(4, 7)
    assert info.value.estimate > info.value.budget
    assert k_general(2, 3, budget=10**3) == 2
    with pytest.raises(BudgetExceeded):
        k_general(3, 5, budget=10)


def test_parallel_matches_serial():
    for form in general.FORMS:
        assert k_general(3, 5, form=form, jobs=3) == k_general(3, 5, form=form, jobs=1)


def test_bad_arguments():
    with pytest.raises(ValueError):
        k_general(3, 4, form="eq99")
    with pytest.raises(ValueError):
        k_general(0, 4)


@pytest.mark.slow
def test_four_rows_five_symbols(k_oracle):
    expected = k_oracle(4, 5)
    for form in general.FORMS:
        assert k_general(4, 5, form=form) == expected
