"""Ground truth by exhaustive search.

``brute_reduced_rectangles`` extends a reduced rectangle row by row, filling
each row left to right over symbols unused in that row and column. Prefixes
that leave the same multiset of per-column used-symbol sets have the same
number of completions, so they are merged before the next row is added; the
last row is counted by a memoized left-to-right fill. Nothing is sampled or
approximated: every admissible row is visited.
"""
from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import BudgetExceeded

State = Tuple[int, ...]  # sorted per-column bitmasks of used symbols

DEFAULT_RECTANGLE_BUDGET = 5 * 10**9
DEFAULT_VERY_REDUCED_BUDGET = 4 * 10**6
MAX_LATIN_SQUARE_CROSSCHECK = 4


def _derangement_count(n: int) -> int:
    d0, d1 = 1, 0
    if n == 0:
        return 1
    for k in range(2, n + 1):
        d0, d1 = d1, (k - 1) * (d0 + d1)
    return d1


def rectangle_work_estimate(m: int, n: int) -> int:
    """Rough upper bound on search steps: admissible middle rows times the
    last-row table size."""
    if m <= 1:
        return 1
    return _derangement_count(n) ** (m - 2) * n * 2**n


def _check_budget(what: str, estimate: int, budget: Optional[int], default: int) -> None:
    limit = default if budget is None else budget
    if estimate > limit:
        raise BudgetExceeded(what, estimate, limit)


def _rows_avoiding(state: State, n: int) -> Iterator[State]:
    """Every row compatible with ``state``, as the resulting next state."""
    full = (1 << n) - 1
    row = [0] * n

    def fill(col: int, used: int):
        if col == n:
            yield tuple(sorted(state[j] | (1 << row[j]) for j in range(n)))
            return
        free = full & ~used & ~state[col]
        while free:
            bit = free & -free
            free ^= bit
            row[col] = bit.bit_length() - 1
            yield from fill(col + 1, used | bit)

    yield from fill(0, 0)


@lru_cache(maxsize=1 << 20)
def _last_row_count(state: State) -> int:
    n = len(state)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def ways(col: int, used: int) -> int:
        if col == n:
            return 1
        free = full & ~used & ~state[col]
        total = 0
        while free:
            bit = free & -free
            free ^= bit
            total += ways(col + 1, used | bit)
        return total

    return ways(0, 0)


def _advance(states: Dict[State, int], n: int) -> Dict[State, int]:
    nxt: Dict[State, int] = defaultdict(int)
    for state, count in states.items():
        for child in _rows_avoiding(state, n):
            nxt[child] += count
    return nxt


def _finish(args) -> int:
    states, n, rows_left = args
    for _ in range(rows_left - 1):
        states = _advance(states, n)
    return sum(count * _last_row_count(state) for state, count in sorted(states.items()))


def brute_reduced_rectangles(m: int, n: int, budget: Optional[int] = None, jobs: int = 1) -> int:
    """K(m, n): reduced m x n Latin rectangles (first row 1 2 ... n)."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    _check_budget(f"oracle K({m},{n})", rectangle_work_estimate(m, n), budget, DEFAULT_RECTANGLE_BUDGET)
    if m == 1:
        return 1
    start: Dict[State, int] = {tuple(1 << j for j in range(n)): 1}
    if m == 2:
        return _finish((start, n, 1))
    second = _advance(start, n)
    items = sorted(second.items())
    if jobs <= 1:
        return _finish((dict(items), n, m - 2))
    # split the search at the second row
    chunks = [dict(items[i::jobs]) for i in range(jobs)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        return sum(pool.map(_finish, [(c, n, m - 2) for c in chunks]))


def plain_reduced_rectangles(m: int, n: int) -> int:
    """Row-major depth-first count that visits every rectangle; small cases only."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    full = (1 << n) - 1
    cols = [1 << j for j in range(n)]

    def rows(r: int) -> int:
        if r == m:
            return 1
        total = 0

        def fill(col: int, used: int) -> None:
            nonlocal total
            if col == n:
                total += rows(r + 1)
                return
            free = full & ~used & ~cols[col]
            while free:
                bit = free & -free
                free ^= bit
                cols[col] |= bit
                fill(col + 1, used | bit)
                cols[col] ^= bit

        fill(0, 0)
        return total

    return rows(1)


def columnwise_reduced_rectangles(m: int, n: int) -> int:
    """Same count, filling the rectangle column by column instead of row by row."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    full = (1 << n) - 1
    row_used = [0] * m
    for r in range(m):
        row_used[r] = 0
    cells = [(c, r) for c in range(n) for r in range(1, m)]

    def fill(k: int, col_used: int) -> int:
        if k == len(cells):
            return 1
        c, r = cells[k]
        if r == 1:
            col_used = 1 << c  # row 1 holds symbol c in column c
        free = full & ~col_used & ~row_used[r]
        total = 0
        while free:
            bit = free & -free
            free ^= bit
            row_used[r] |= bit
            total += fill(k + 1, col_used | bit)
            row_used[r] ^= bit
        return total

    return fill(0, 0)


def unrestricted_latin_squares(n: int) -> int:
    """Every n x n Latin square, nothing normalized; n <= 4."""
    if not 1 <= n <= MAX_LATIN_SQUARE_CROSSCHECK:
        raise ValueError(f"unrestricted enumeration is limited to 1 <= n <= {MAX_LATIN_SQUARE_CROSSCHECK}")
    full = (1 << n) - 1
    row_used = [0] * n
    col_used = [0] * n

    def fill(k: int) -> int:
        if k == n * n:
            return 1
        r, c = divmod(k, n)
        free = full & ~row_used[r] & ~col_used[c]
        total = 0
        while free:
            bit = free & -free
            free ^= bit
            row_used[r] |= bit
            col_used[c] |= bit
            total += fill(k + 1)
            row_used[r] ^= bit
            col_used[c] ^= bit
        return total

    return fill(0)


def brute_latin_squares(n: int, budget: Optional[int] = None, jobs: int = 1) -> int:
    """L(n) = n! K(n, n), checked against unrestricted enumeration for n <= 4."""
    if n < 1:
        raise ValueError("n must be positive")
    value = factorial(n) * brute_reduced_rectangles(n, n, budget=budget, jobs=jobs)
    if n <= MAX_LATIN_SQUARE_CROSSCHECK:
        direct = unrestricted_latin_squares(n)
        if direct != value:
            raise AssertionError(f"L({n}): n!K(n,n) = {value} but direct enumeration gives {direct}")
    return value


def _count_permutations(n: int, allowed: List[int]) -> int:
    # allowed[i] is the bitmask of symbols position i may take
    def fill(i: int, used: int) -> int:
        if i == n:
            return 1
        free = allowed[i] & ~used
        total = 0
        while free:
            bit = free & -free
            free ^= bit
            total += fill(i + 1, used | bit)
        return total

    return fill(0, 0)


def brute_very_reduced(m: int, n: int, budget: Optional[int] = None) -> int:
    """V(m, n): permutations with ``p(i) - i`` not in {0, ..., m-1} mod n."""
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    _check_budget(f"oracle V({m},{n})", factorial(n), budget, DEFAULT_VERY_REDUCED_BUDGET)
    allowed = []
    for i in range(n):
        mask = 0
        for s in range(n):
            if (s - i) % n >= m:
                mask |= 1 << s
        allowed.append(mask)
    return _count_permutations(n, allowed)


def brute_derangements(n: int, budget: Optional[int] = None) -> int:
    """Fixed-point-free permutations of ``[n]`` by exhaustive search."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_budget(f"oracle D({n})", factorial(n), budget, DEFAULT_VERY_REDUCED_BUDGET)
    full = (1 << n) - 1
    return _count_permutations(n, [full & ~(1 << i) for i in range(n)])


def first_witness(m: int, n: int) -> Optional[List[Tuple[int, ...]]]:
    """The lexicographically first reduced m x n rectangle, 1-based rows."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    full = (1 << n) - 1
    cols = [1 << j for j in range(n)]
    rows: List[List[int]] = [list(range(n))]

    def extend(r: int) -> bool:
        if r == m:
            return True
        row = [0] * n

        def fill(col: int, used: int) -> bool:
            if col == n:
                rows.append(list(row))
                if extend(r + 1):
                    return True
                rows.pop()
                return False
            free = full & ~used & ~cols[col]
            while free:
                bit = free & -free
                free ^= bit
                row[col] = bit.bit_length() - 1
                cols[col] |= bit
                if fill(col + 1, used | bit):
                    return True
                cols[col] ^= bit
            return False

        return fill(0, 0)

    if not extend(1):
        return None
    return [tuple(x + 1 for x in row) for row in rows]
