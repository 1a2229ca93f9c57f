import itertools
import random
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from latin_census.boards import Board, board_from_permutation, diagonal_board, full_board, hit_numbers, rook_numbers
from latin_census.closed_forms import derangements
from latin_census.permutations import Permutation


def direct_hits(board, n):
    out = [0] * (n + 1)
    for word in itertools.permutations(range(1, n + 1)):
        out[sum((i, word[i - 1]) in board for i in range(1, n + 1))] += 1
    return out


def direct_rooks(board):
    cells = sorted(board.cells)
    out = [1]
    for k in range(1, len(cells) + 1):
        c = sum(
            1
            for sub in itertools.combinations(cells, k)
            if len({r for r, _ in sub}) == k and len({col for _, col in sub}) == k
        )
        if c == 0:
            break
        out.append(c)
    return out


boards = st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.sets(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=n * n).map(Board),
    )
)


@settings(max_examples=60, deadline=None)
@given(boards)
def test_hit_numbers_match_direct_classification(case):
    n, b = case
    hits = hit_numbers(b, n)
    assert hits == direct_hits(b, n)
    assert sum(hits) == factorial(n)


@settings(max_examples=60, deadline=None)
@given(boards)
def test_rook_numbers_match_subset_enumeration(case):
    _, b = case
    if len(b) <= 12:
        assert rook_numbers(b) == direct_rooks(b)


def test_fifty_seeded_random_boards():
    rng = random.Random(20240601)
    for _ in range(50):
        n = rng.randint(1, 6)
        cells = {(rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, n * n))}
        b = Board(cells)
        assert hit_numbers(b, n) == direct_hits(b, n)


@pytest.mark.parametrize("n", range(1, 8))
def test_diagonal_board_gives_derangements(n):
    assert hit_numbers(diagonal_board(n), n)[0] == derangements(n)


def test_small_boards():
    assert rook_numbers(Board()) == [1]
    assert rook_numbers(full_board(2, 3)) == [1, 6, 6]
    p = Permutation((2, 3, 1))
    assert hit_numbers(board_from_permutation(p), 3) == [2, 3, 0, 1]


def test_board_validation():
    with pytest.raises(ValueError):
        Board([(0, 1)])
    with pytest.raises(ValueError):
        hit_numbers(Board([(4, 1)]), 3)
