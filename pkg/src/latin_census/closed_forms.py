"""Explicit fixed-m formulas: derangements, menage numbers, two classical
formulas for three-row rectangles and the two multi-sums for four rows."""
from __future__ import annotations

from math import comb, factorial
from typing import Tuple

from .numeric import ExactSum, compositions, multinomial
from .parallel import partitioned_sum

K4_VARIANTS = ("pranesachar", "simplified")


def derangements(n: int) -> int:
    """Permutations of ``[n]`` without fixed points, by the alternating sum."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    nf = factorial(n)
    return sum((-1) ** k * (nf // factorial(k)) for k in range(n + 1))


def touchard(n: int) -> int:
    """Menage number ``U_n``. Gives -1 and 0 at n = 1, 2, as the formula does."""
    if n < 1:
        raise ValueError("touchard(n) is defined for n >= 1; U_0 = 1 is a separate convention")
    total = 0
    for k in range(n + 1):
        num = 2 * n * comb(2 * n - k, k)
        q, r = divmod(num, 2 * n - k)
        assert r == 0, (n, k)
        total += (-1) ** k * q * factorial(n - k)
    return total


def k3_yamamoto(n: int) -> int:
    """K(3, n) as ``n! * sum over a+b+c=n of (-1)^b 2^c (a!/c!) C(3a+b+2, b)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = ExactSum()
    nf = factorial(n)
    for a, b, c in compositions(n, 3):
        num = (-1) ** b * 2**c * factorial(a) * comb(3 * a + b + 2, b) * nf
        acc.add(num, factorial(c))
    return acc.integer()


def k3_riordan(n: int) -> int:
    """K(3, n) from derangement and menage numbers, with ``U_0 = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def u(j: int) -> int:
        return 1 if j == 0 else touchard(j)

    return sum(
        comb(n, k) * derangements(k) * derangements(n - k) * u(n - 2 * k)
        for k in range(n // 2 + 1)
    )


# Free variables of the four-row multi-sums, in displayed order.
# rbar: r1000 r1200 r2100 r0100 r0010 r3010 r0200 r3000 r2000 r0000
# free c: c1200 c2100 c3010


def _k4_c_range(rbar, n):
    (r1000, r1200, r2100, r0100, r0010, r3010, r0200, r3000, r2000, r0000) = rbar
    # each free c is bounded by the smaller q of its two components
    mu1200 = min(r1000 + r1200, r0200 + r1200)
    mu2100 = min(r2100 + r0100, r2000 + r2100)
    mu3010 = min(r0010 + r3010, r3000 + r3010)
    for c1200 in range(mu1200 + 1):
        for c2100 in range(mu2100 + 1):
            for c3010 in range(mu3010 + 1):
                c1000 = r1000 + r1200 - c1200
                c0100 = r0100 + r2100 - c2100
                c0010 = r0010 + r3010 - c3010
                c0200 = r0200 + r1200 - c1200
                c2000 = r2000 + r2100 - c2100
                c3000 = r3000 + r3010 - c3010
                c0000 = r0000 + r3000 + r2000 + r0200 - c3000 - c2000 - c0200
                dep = (c1000, c0100, c0010, c0200, c2000, c3000, c0000)
                if min(dep) < 0:
                    continue
                yield (c1200, c2100, c3010), dep


def _mn(total: int, *parts: int) -> int:
    # multinomial with every part written out
    assert sum(parts) == total
    return multinomial(total, parts[:-1])


def _k4_pranesachar_chunk(args: Tuple[int, int]) -> ExactSum:
    n, f0 = args
    acc = ExactSum()
    nf = factorial(n)
    for rest in compositions(n - f0, 14):
        f1, f2, f3, f4 = rest[:4]
        rbar = rest[4:]
        (r1000, r1200, r2100, r0100, r0010, r3010, r0200, r3000, r2000, r0000) = rbar
        sign = (-1) ** (f0 + r1000 + r0100 + r0010 + r3000 + r2000 + r0200)
        head = sign * 6**f0 * 2 ** (f1 + f2 + f3 + f4) * nf
        head *= factorial(f1 + r0000 + r3000 + r2000 + r0200)
        head *= factorial(f2 + r0000 + r3000 + r0100 + r1000)
        head *= factorial(f3 + r0000 + r2000 + r1000 + r0010)
        head *= factorial(f4 + r0000 + r0100 + r0010 + r0200)
        den = factorial(f0) * factorial(f1) * factorial(f2) * factorial(f3) * factorial(f4)
        for r in rbar:
            den *= factorial(r)
        for (c1200, c2100, c3010), dep in _k4_c_range(rbar, n):
            c1000, c0100, c0010, c0200, c2000, c3000, c0000 = dep
            num = head * factorial(c1200)
            num *= _mn(r2000 + r2100, c2000, c2100) * factorial(c2100)
            num *= _mn(r3000 + r3010, c3000, c3010) * factorial(c3010)
            num *= _mn(r1000 + r1200, c1000, c1200)
            num *= _mn(r2100 + r0100, c2100, c0100)
            num *= _mn(r0010 + r3010, c0010, c3010)
            num *= _mn(r0200 + r1200, c0200, c1200)
            acc.add(num, den * factorial(c0000))
    return acc


def _k4_simplified_chunk(args: Tuple[int, int]) -> ExactSum:
    n, f0 = args
    acc = ExactSum()
    nf = factorial(n)
    for rest in compositions(n - f0, 11):
        f = rest[0]
        rbar = rest[1:]
        (r1000, r1200, r2100, r0100, r0010, r3010, r0200, r3000, r2000, r0000) = rbar
        sign = (-1) ** (f0 + r1000 + r0100 + r0010 + r3000 + r2000 + r0200)
        head = sign * 6**f0 * 2**f * nf
        for x in (
            r0000 + r3000 + r2000 + r0200,
            r0000 + r3000 + r0100 + r1000,
            r0000 + r2000 + r1000 + r0010,
            r0000 + r0100 + r0010 + r0200,
            r1000 + r1200,
            r2100 + r0100,
            r0010 + r3010,
            r0200 + r1200,
            r2000 + r2100,
            r3000 + r3010,
        ):
            head *= factorial(x)
        head *= comb(f + 4 * r0000 + 2 * (r3000 + r2000 + r0100 + r1000 + r0200 + r0010) + 3, f)
        den = factorial(f0)
        for r in rbar:
            den *= factorial(r)
        for free, dep in _k4_c_range(rbar, n):
            d = den
            for c in free:
                d *= factorial(c)
            # the eliminated c-variables keep their factorials in the denominator
            for c in dep:
                d *= factorial(c)
            acc.add(head, d)
    return acc


def k4_explicit(n: int, variant: str = "simplified", jobs: int = 1) -> int:
    """K(4, n) by the 18-variable or the 15-variable multi-sum.

    The outer sum over the number of 4-cycles is split across ``jobs`` workers.
    """
    if variant not in K4_VARIANTS:
        raise ValueError(f"variant must be one of {K4_VARIANTS}, got {variant!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    worker = _k4_pranesachar_chunk if variant == "pranesachar" else _k4_simplified_chunk
    chunks = [(n, f0) for f0 in range(n + 1)]
    return partitioned_sum(worker, chunks, jobs).integer()
