"""Exact integer arithmetic shared by every counting formula.

Counts are plain Python ``int`` values, which are arbitrary precision, so no
wrapper type is needed. Terms of the alternating sums that are not integers on
their own are accumulated with :class:`ExactSum`.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Sequence, Tuple

__all__ = [
    "factorial",
    "falling",
    "rising",
    "neg_bang",
    "binomial",
    "multinomial",
    "ExactSum",
    "product_of_factorials",
    "compositions",
    "count_compositions",
]


def falling(x: int, k: int) -> int:
    """Falling factorial ``x (x-1) ... (x-k+1)``; the empty product is 1."""
    if k < 0:
        raise ValueError(f"falling factorial needs k >= 0, got {k}")
    out = 1
    for i in range(k):
        out *= x - i
    return out


def rising(x: int, k: int) -> int:
    """Rising factorial ``x (x+1) ... (x+k-1)``; the empty product is 1."""
    if k < 0:
        raise ValueError(f"rising factorial needs k >= 0, got {k}")
    out = 1
    for i in range(k):
        out *= x + i
    return out


def neg_bang(q: int) -> int:
    """The rising factorial of ``-q`` taken ``q`` times, i.e. ``(-1)**q * q!``."""
    if q < 0:
        raise ValueError(f"neg_bang needs q >= 0, got {q}")
    f = factorial(q)
    return -f if q & 1 else f


def binomial(n: int, k: int) -> int:
    """``C(n, k)`` for ``0 <= k <= n``, zero outside that range."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(n: int, parts: Iterable[int]) -> int:
    """``n! / (x_1! ... x_s! (n - sum x)!)``; the last part is implicit."""
    parts = list(parts)
    if any(x < 0 for x in parts):
        raise ValueError(f"multinomial parts must be nonnegative: {parts}")
    rest = n - sum(parts)
    if rest < 0:
        raise ValueError(f"parts {parts} sum to more than {n}")
    out = 1
    total = rest
    for x in parts:
        total += x
        out *= comb(total, x)
    return out


class ExactSum:
    """Accumulator for rational terms whose total is expected to be an integer.

    Integer-valued terms stay in the fast ``int`` path; only the fractional
    remainders go through :class:`fractions.Fraction`.
    """

    __slots__ = ("whole", "frac")

    def __init__(self) -> None:
        self.whole = 0
        self.frac = Fraction(0)

    def add(self, num: int, den: int = 1) -> None:
        q, r = divmod(num, den)
        self.whole += q
        if r:
            self.frac += Fraction(r, den)

    def merge(self, other: "ExactSum") -> None:
        self.whole += other.whole
        self.frac += other.frac

    def value(self) -> Fraction:
        return self.whole + self.frac

    def integer(self) -> int:
        """The total as an ``int``; raises ``ArithmeticError`` if it is not one."""
        total = self.value()
        if total.denominator != 1:
            raise ArithmeticError(f"alternating sum is not an integer: {total}")
        return int(total)

    def __getstate__(self):
        return (self.whole, self.frac)

    def __setstate__(self, state):
        self.whole, self.frac = state


def product_of_factorials(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        if v > 1:
            out *= factorial(v)
    return out


def compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of ``n`` into ``k`` parts, in lexicographic order."""
    if k == 0:
        if n == 0:
            yield ()
        return
    last = n + k - 2
    for bars in itertools.combinations(range(n + k - 1), k - 1):
        parts = []
        prev = -1
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(last - prev)
        yield tuple(parts)


def count_compositions(n: int, k: int) -> int:
    if k == 0:
        return 1 if n == 0 else 0
    return comb(n + k - 1, k - 1)
