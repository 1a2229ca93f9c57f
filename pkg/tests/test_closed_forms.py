import pytest

from latin_census import oracle
from latin_census.closed_forms import derangements, k3_riordan, k3_yamamoto, k4_explicit, touchard

# values produced by the exhaustive oracle in this package
D = [1, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496]
U = {1: -1, 2: 0, 3: 1, 4: 2, 5: 13, 6: 80, 7: 579, 8: 4738, 9: 43387, 10: 439792}
K3 = {3: 2, 4: 24, 5: 552, 6: 21280, 7: 1073760}
K4 = {4: 24, 5: 1344, 6: 393120}


def test_derangements():
    assert [derangements(n) for n in range(10)] == D
    with pytest.raises(ValueError):
        derangements(-1)


@pytest.mark.parametrize("n", range(10))
def test_derangements_against_oracle(n):
    assert derangements(n) == oracle.brute_derangements(n)


def test_touchard_values():
    assert {n: touchard(n) for n in U} == U
    with pytest.raises(ValueError):
        touchard(0)


@pytest.mark.parametrize("n", range(3, 10))
def test_touchard_against_oracle(n):
    assert touchard(n) == oracle.brute_very_reduced(2, n)


@pytest.mark.parametrize("n", sorted(K3))
def test_three_row_forms(n):
    assert k3_yamamoto(n) == k3_riordan(n) == K3[n]


@pytest.mark.parametrize("n", sorted(K4))
@pytest.mark.parametrize("variant", ["pranesachar", "simplified"])
def test_four_row_forms(n, variant):
    assert k4_explicit(n, variant) == K4[n]


def test_four_row_forms_parallel_agree():
    assert k4_explicit(5, "simplified", jobs=3) == k4_explicit(5, "simplified", jobs=1)


def test_four_row_variant_check():
    with pytest.raises(ValueError):
        k4_explicit(4, "other")


def test_fixtures_are_oracle_values(k_oracle):
    for n, v in K3.items():
        assert k_oracle(3, n) == v
    for n, v in K4.items():
        assert k_oracle(4, n) == v
