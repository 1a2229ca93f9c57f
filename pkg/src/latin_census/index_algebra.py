"""Index tuples ``(a_m, ..., a_1)`` with ``0 <= a_j <= j - 1``, the covering
map between their positions, and the component structure it induces.

A position ``i`` with value ``a_i > 0`` covers position ``a_i`` (always a
smaller position). Following covers from any position ends at a zero-valued
position, the anchor of that position's component. Components carry their
values, not just their positions: two different tuples can share a component
only if the positions *and* values agree.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Sequence, Tuple

from .permutations import Permutation, covering_table, from_covering_table


@dataclass(frozen=True, order=True)
class IndexTuple:
    """``alpha`` is written in the conventional order ``(a_m, ..., a_1)``."""

    alpha: Tuple[int, ...]

    def __post_init__(self):
        alpha = tuple(self.alpha)
        m = len(alpha)
        if m == 0:
            raise ValueError("index tuple must have degree >= 1")
        for j in range(1, m + 1):
            v = alpha[m - j]
            if not 0 <= v <= j - 1:
                raise ValueError(f"a_{j} = {v} outside [0, {j - 1}] in {alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def parse(cls, digits: str) -> "IndexTuple":
        """``IndexTuple.parse("1200")`` gives a_4=1, a_3=2, a_2=0, a_1=0."""
        return cls(tuple(int(c) for c in digits))

    @property
    def m(self) -> int:
        return len(self.alpha)

    def __getitem__(self, j: int) -> int:
        """Value at position ``j`` (1-based)."""
        if not 1 <= j <= self.m:
            raise IndexError(f"position {j} outside 1..{self.m}")
        return self.alpha[self.m - j]

    def __str__(self) -> str:
        if self.m < 10:
            return "".join(map(str, self.alpha))
        return ",".join(map(str, self.alpha))


@dataclass(frozen=True)
class Component:
    """A component: its zero-valued anchor and its (position, value) members."""

    anchor: int
    members: FrozenSet[Tuple[int, int]]

    @property
    def positions(self) -> Tuple[int, ...]:
        return tuple(sorted(p for p, _ in self.members))

    def __len__(self) -> int:
        return len(self.members)

    def sort_key(self):
        return (self.anchor, len(self.members), tuple(sorted(self.members)))

    def __str__(self) -> str:
        inner = ",".join(f"{p}:{v}" for p, v in sorted(self.members, reverse=True))
        return f"Z{self.anchor}{{{inner}}}"


@dataclass(frozen=True)
class Structure:
    components: Tuple[Component, ...]

    @property
    def zeta(self) -> int:
        return len(self.components)

    def at(self, l: int) -> Optional[Component]:
        """The component anchored at ``l``, or ``None`` if ``a_l != 0``."""
        for c in self.components:
            if c.anchor == l:
                return c
        return None

    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.components), reverse=True))


def kappa(t: IndexTuple, i: int) -> Optional[int]:
    """The position covered by position ``i``, or ``None`` when ``a_i = 0``."""
    v = t[i]
    return v if v > 0 else None


def anchor_of(t: IndexTuple, i: int) -> int:
    while True:
        nxt = kappa(t, i)
        if nxt is None:
            return i
        i = nxt


def structure(t: IndexTuple) -> Structure:
    groups: Dict[int, list] = {}
    for j in range(1, t.m + 1):
        groups.setdefault(anchor_of(t, j), []).append((j, t[j]))
    comps = (Component(h, frozenset(members)) for h, members in groups.items())
    return Structure(tuple(sorted(comps, key=Component.sort_key)))


def zeta(t: IndexTuple) -> int:
    return sum(1 for v in t.alpha if v == 0)


def all_index_tuples(m: int) -> Iterator[IndexTuple]:
    """All ``m!`` tuples, lexicographic in ``(a_m, ..., a_1)``."""
    ranges = [range(j) for j in range(m, 0, -1)]
    for alpha in itertools.product(*ranges):
        yield IndexTuple(alpha)


@lru_cache(maxsize=None)
def index_tuples(m: int) -> Tuple[IndexTuple, ...]:
    return tuple(all_index_tuples(m))


@lru_cache(maxsize=None)
def all_components(m: int) -> Tuple[Component, ...]:
    """Every component occurring in some tuple of degree ``m``, deterministically ordered."""
    seen = {c for t in index_tuples(m) for c in structure(t).components}
    return tuple(sorted(seen, key=Component.sort_key))


def prop41_counts(m: int, z: int) -> Tuple[int, int]:
    """Number of index sets ``Z`` of ``z`` entries outside the component at 1,
    and number of tuples sharing one fixed such ``Z``."""
    if m < 1:
        raise ValueError("m must be positive")
    if not 0 <= z <= m - 1:
        raise ValueError(f"z must lie in [0, {m - 1}], got {z}")
    return comb(m - 1, z) * factorial(z), factorial(m - 1 - z)


def prop42_count(m: int, parts: Mapping[int, int]) -> int:
    """Tuples whose component sizes form the partition with ``parts[s]`` parts of size ``s``."""
    if any(s <= 0 or k < 0 for s, k in parts.items()):
        raise ValueError(f"invalid partition multiplicities {dict(parts)}")
    if sum(s * k for s, k in parts.items()) != m:
        raise ValueError(f"{dict(parts)} is not a partition of {m}")
    den = prod(s**k * factorial(k) for s, k in parts.items())
    return factorial(m) // den


def tuple_from_permutation(p: Permutation) -> IndexTuple:
    """Covering table read backwards: ``a_{m+1-i} = k_i``."""
    k = covering_table(p)
    # alpha in (a_m, ..., a_1) order: a_m = k_1, ..., a_1 = k_m
    return IndexTuple(tuple(k))


def permutation_from_tuple(t: IndexTuple) -> Permutation:
    return from_covering_table(t.alpha)


def partitions(m: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Integer partitions of ``m`` as non-increasing tuples."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def multiplicities(parts: Sequence[int]) -> Dict[int, int]:
    return dict(Counter(parts))
