import pytest
from hypothesis import given, strategies as st

from latin_census.permutations import (
    Permutation,
    all_permutations,
    covering_table,
    from_covering_table,
    from_inversion_table,
    from_standard_word,
    inversion_table,
    standard_cycles,
    standard_word,
)

perms = st.integers(1, 9).flatmap(lambda m: st.permutations(range(1, m + 1))).map(Permutation)


def test_rejects_non_permutations():
    for word in [(1, 1), (0, 1), (2, 3)]:
        with pytest.raises(ValueError):
            Permutation(word)


@given(perms)
def test_standard_representation(p):
    cycles = standard_cycles(p)
    assert all(c[0] == max(c) for c in cycles)
    assert [c[0] for c in cycles] == sorted(c[0] for c in cycles)
    assert from_standard_word(standard_word(p)) == p


@given(perms)
def test_group_laws(p):
    e = Permutation.identity(p.m)
    assert p.compose(p.inverse()) == e == p.inverse().compose(p)
    assert p.compose(e) == p


@given(perms)
def test_tables_round_trip(p):
    assert from_inversion_table(inversion_table(p)) == p
    assert from_covering_table(covering_table(p)) == p


@given(perms)
def test_table_ranges(p):
    for table in (inversion_table(p), covering_table(p)):
        assert all(0 <= x <= p.m - i for i, x in enumerate(table, 1))


@given(perms)
def test_zero_entries_count_cycles(p):
    cycles = len(standard_cycles(p))
    assert covering_table(p).count(0) == cycles
    assert inversion_table(p).count(0) == cycles


def test_covering_and_inversion_tables_differ_in_degree_three():
    # standard word 2 1 3: two larger elements precede 1 but the nearest is 3
    p = Permutation((3, 2, 1))
    assert standard_word(p) == (2, 3, 1)
    assert inversion_table(p) == (2, 0, 0)
    assert covering_table(p) == (1, 0, 0)


def test_table_examples():
    p = Permutation((2, 3, 1))
    assert standard_cycles(p) == ((3, 1, 2),)
    assert covering_table(p) == (1, 1, 0)
    assert covering_table(Permutation.identity(5)) == (0,) * 5


@pytest.mark.parametrize("m", range(1, 8))
def test_covering_table_is_a_bijection(m):
    tables = set()
    for p in all_permutations(m):
        t = covering_table(p)
        assert from_covering_table(t) == p
        tables.add(t)
    assert len(tables) == len(set(map(tuple, _all_tables(m))))


def _all_tables(m):
    import itertools

    return itertools.product(*(range(m - i + 1) for i in range(1, m + 1)))


def test_enumeration_guard():
    with pytest.raises(ValueError):
        list(all_permutations(9))
    with pytest.raises(ValueError):
        from_covering_table((3, 0, 0))
