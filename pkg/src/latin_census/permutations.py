"""Permutations of ``[m]`` in word form, standard cycle form, inversion table
and covering table.

The standard representation writes every cycle with its largest element first
and orders the cycles by increasing leader, so the leaders are exactly the
left-to-right maxima of the concatenated word.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

CycleForm = Tuple[Tuple[int, ...], ...]
InversionTable = Tuple[int, ...]
CoveringTable = Tuple[int, ...]

MAX_ENUMERATION_DEGREE = 8


@dataclass(frozen=True)
class Permutation:
    """A permutation given by its word ``a_1 ... a_m`` with ``a_i = p(i)``."""

    word: Tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word!r} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    @property
    def m(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __str__(self) -> str:
        return " ".join(map(str, self.word))

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_cycles(cls, m: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        word = list(range(1, m + 1))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                word[a - 1] = b
        return cls(tuple(word))

    def inverse(self) -> "Permutation":
        word = [0] * self.m
        for i, a in enumerate(self.word, 1):
            word[a - 1] = i
        return Permutation(tuple(word))

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self o other)(i) = self(other(i))``."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.m + 1)))

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in standard_cycles(self)), reverse=True))


def standard_cycles(p: Permutation) -> CycleForm:
    """Cycles of ``p``, each led by its largest element, sorted by leader."""
    seen = set()
    cycles = []
    for start in range(p.m, 0, -1):
        if start in seen:
            continue
        # start is the largest unseen element, hence the largest of its cycle
        cyc = [start]
        seen.add(start)
        x = p(start)
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p(x)
        cycles.append(tuple(cyc))
    cycles.reverse()
    return tuple(cycles)


def standard_word(p: Permutation) -> Tuple[int, ...]:
    """The concatenation ``s_1 ... s_m`` of the standard representation."""
    return tuple(itertools.chain.from_iterable(standard_cycles(p)))


def from_standard_word(s: Sequence[int]) -> Permutation:
    """Split ``s`` at its left-to-right maxima and read the pieces as cycles."""
    cycles = []
    best = 0
    for x in s:
        if x > best:
            best = x
            cycles.append([x])
        else:
            cycles[-1].append(x)
    return Permutation.from_cycles(len(s), cycles)


def _check_table(t: Sequence[int]) -> Tuple[int, ...]:
    t = tuple(t)
    m = len(t)
    for i, x in enumerate(t, 1):
        if not 0 <= x <= m - i:
            raise ValueError(f"entry {i} of {t!r} must lie in [0, {m - i}]")
    return t


def inversion_table(p: Permutation) -> InversionTable:
    """``b_i`` = number of elements larger than ``i`` left of ``i`` in the
    standard representation."""
    s = standard_word(p)
    pos = {x: k for k, x in enumerate(s)}
    return tuple(sum(1 for x in s[: pos[i]] if x > i) for i in range(1, p.m + 1))


def from_inversion_table(t: Sequence[int]) -> Permutation:
    t = _check_table(t)
    m = len(t)
    s: list = []
    # insert m, m-1, ..., 1; everything already placed is larger
    for i in range(m, 0, -1):
        s.insert(t[i - 1], i)
    return from_standard_word(s)


def covering_table(p: Permutation) -> CoveringTable:
    """``k_i = m + 1 - t`` where ``t`` is the rightmost element left of ``i``
    that exceeds ``i`` in the standard representation; 0 if there is none."""
    s = standard_word(p)
    m = p.m
    k = [0] * m
    for pos, i in enumerate(s):
        for x in reversed(s[:pos]):
            if x > i:
                k[i - 1] = m + 1 - x
                break
    return tuple(k)


def from_covering_table(t: Sequence[int]) -> Permutation:
    t = _check_table(t)
    m = len(t)
    s: list = []
    for i in range(m, 0, -1):
        k = t[i - 1]
        if k == 0:
            s.insert(0, i)
        else:
            # i sits immediately after m + 1 - k among the larger elements
            s.insert(s.index(m + 1 - k) + 1, i)
    return from_standard_word(s)


def all_permutations(m: int) -> Iterator[Permutation]:
    """Every element of S_m once, in lexicographic word order."""
    if not 1 <= m <= MAX_ENUMERATION_DEGREE:
        raise ValueError(f"refusing to enumerate S_{m}; degree must be in 1..{MAX_ENUMERATION_DEGREE}")
    for word in itertools.permutations(range(1, m + 1)):
        yield Permutation(word)
