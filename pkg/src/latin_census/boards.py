"""Boards, rook numbers and hit numbers."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import FrozenSet, Iterable, List, Tuple

from .permutations import Permutation

Cell = Tuple[int, int]


@dataclass(frozen=True)
class Board:
    """A finite set of (row, column) cells. The empty board is allowed."""

    cells: FrozenSet[Cell]

    def __init__(self, cells: Iterable[Cell] = ()):
        cells = frozenset((int(r), int(c)) for r, c in cells)
        for r, c in cells:
            if r < 1 or c < 1:
                raise ValueError(f"cell {(r, c)} must have positive coordinates")
        object.__setattr__(self, "cells", cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    def __contains__(self, cell) -> bool:
        return cell in self.cells


def diagonal_board(n: int) -> Board:
    return Board((i, i) for i in range(1, n + 1))


def board_from_permutation(p: Permutation) -> Board:
    """The graph of ``p``: cells ``(i, p(i))``."""
    return Board((i, p(i)) for i in range(1, p.m + 1))


def full_board(rows: int, cols: int) -> Board:
    return Board((r, c) for r in range(1, rows + 1) for c in range(1, cols + 1))


def _canonical(cells: FrozenSet[Cell]) -> FrozenSet[Cell]:
    # relabel rows and columns by rank; rook numbers only see the incidence pattern
    rows = {r: i for i, r in enumerate(sorted({r for r, _ in cells}))}
    cols = {c: i for i, c in enumerate(sorted({c for _, c in cells}))}
    return frozenset((rows[r], cols[c]) for r, c in cells)


@lru_cache(maxsize=1 << 16)
def _rook_poly(cells: FrozenSet[Cell]) -> Tuple[int, ...]:
    if not cells:
        return (1,)
    cell = min(cells)
    r, c = cell
    without = _rook_poly(_canonical(cells - {cell}))
    rest = frozenset(x for x in cells if x[0] != r and x[1] != c)
    using = _rook_poly(_canonical(rest))
    size = max(len(without), len(using) + 1)
    out = [0] * size
    for k, v in enumerate(without):
        out[k] += v
    for k, v in enumerate(using):
        out[k + 1] += v
    return tuple(out)


def rook_numbers(b: Board) -> List[int]:
    """``[r_0, r_1, ..., r_K]``: placements of k non-attacking rooks, K maximal."""
    return list(_rook_poly(_canonical(b.cells)))


def hit_numbers(b: Board, n: int) -> List[int]:
    """``[N_0, ..., N_n]``: permutations of ``[n]`` meeting ``b`` in exactly s cells."""
    if n < 1:
        raise ValueError("n must be positive")
    for r, c in b.cells:
        if r > n or c > n:
            raise ValueError(f"cell {(r, c)} lies outside [{n}]x[{n}]")
    r = rook_numbers(b)
    r += [0] * (n + 1 - len(r))
    return [
        sum((-1) ** (k - s) * comb(k, s) * factorial(n - k) * r[k] for k in range(s, n + 1))
        for s in range(n + 1)
    ]
