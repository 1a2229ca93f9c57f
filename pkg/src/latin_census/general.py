"""K(m, n) for arbitrary m as an alternating sum over two families of
nonnegative integer variables indexed by the ``m!`` index tuples.

The row variables ``R`` are any composition of ``n``; the column variables
``C`` must satisfy, for every component ``Z`` (keyed by its full content), the
balance condition "sum of C over tuples containing Z = sum of R over tuples
containing Z". With ``q(Z)`` that common sum, ``W`` the tuples with an odd
number of components and ``q(Z_0) = n``::

    K(m, n) = sum_R sum_C (-1)^(nm + sum_W r) * prod_Z q(Z)! / (prod r! prod c!)

Four evaluators are provided:

``eq56``
    the sum above, with ``C`` found by a generic constraint solver;
``eq57``
    only the independent column variables are enumerated, inside the box
    ``[0, mu]``; the dependent ones are reconstructed and negative
    reconstructions are skipped;
``eq65``
    tuples with one component, or with a fixed point plus an (m-1)-block,
    are summed out in closed form, leaving ``f0``, ``f`` and the rest;
``eq81``
    variables indexed by permutations of ``[m]`` and constraints by cycles,
    built without reference to index tuples.

Individual terms are rationals; totals are accumulated exactly and must come
out integral.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import BudgetExceeded
from .index_algebra import Component, IndexTuple, index_tuples, structure
from .numeric import ExactSum, compositions, count_compositions, neg_bang
from .parallel import partitioned_sum
from .permutations import Permutation, all_permutations, standard_cycles

FORMS = ("eq56", "eq57", "eq65", "eq81")
TERM_FORMS = ("eq56", "eq56_negbang")
DEFAULT_BUDGET = 10**8

RMap = Tuple[int, ...]
CMap = Tuple[int, ...]


@dataclass(frozen=True)
class TermContext:
    """Everything about degree ``m`` that does not depend on ``n``.

    Variables are addressed by their position in ``tuples``; components by
    their position in ``components``.
    """

    m: int
    tuples: Tuple[IndexTuple, ...]
    components: Tuple[Component, ...]
    incidence: Tuple[Tuple[int, ...], ...]  # tuple -> its components
    component_index: Tuple[Tuple[int, ...], ...]  # component -> tuples containing it
    zeta: Tuple[int, ...]
    odd: Tuple[int, ...]  # tuples in W
    singleton_at: Tuple[int, ...]  # position s -> component {s:0}
    zero_tuple: int
    dependent: Tuple[Tuple[int, int], ...]  # (non-singleton component, its d-tuple)
    free: Tuple[int, ...]  # tuples with >= 2 non-singleton components
    f0: Tuple[int, ...]
    fs: Tuple[Tuple[int, ...], ...]  # fs[s-1]
    rbar: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.tuples)

    def tuple_pos(self, t: IndexTuple) -> int:
        return self.tuples.index(t)


@lru_cache(maxsize=None)
def term_context(m: int) -> TermContext:
    if m < 1:
        raise ValueError("m must be positive")
    tuples = index_tuples(m)
    structs = [structure(t) for t in tuples]
    comps = sorted({c for s in structs for c in s.components}, key=Component.sort_key)
    cidx = {c: k for k, c in enumerate(comps)}
    incidence = tuple(tuple(cidx[c] for c in s.components) for s in structs)
    index: List[List[int]] = [[] for _ in comps]
    for i, inc in enumerate(incidence):
        for k in inc:
            index[k].append(i)
    zeta = tuple(s.zeta for s in structs)
    singleton_at = tuple(cidx[Component(s, frozenset({(s, 0)}))] for s in range(1, m + 1))
    zero_tuple = tuples.index(IndexTuple((0,) * m))

    dependent = []
    free = []
    for i, s in enumerate(structs):
        big = [c for c in s.components if len(c) > 1]
        if len(big) == 1:
            dependent.append((cidx[big[0]], i))
        elif len(big) >= 2:
            free.append(i)

    f0 = tuple(i for i, z in enumerate(zeta) if z == 1)
    fs = []
    for s in range(1, m + 1):
        fs.append(
            tuple(
                i
                for i, st in enumerate(structs)
                if st.zeta == 2 and singleton_at[s - 1] in incidence[i]
            )
        )
    taken = set(f0).union(*fs)
    rbar = tuple(i for i in range(len(tuples)) if i not in taken)
    return TermContext(
        m=m,
        tuples=tuples,
        components=tuple(comps),
        incidence=incidence,
        component_index=tuple(tuple(x) for x in index),
        zeta=zeta,
        odd=tuple(i for i, z in enumerate(zeta) if z % 2),
        singleton_at=singleton_at,
        zero_tuple=zero_tuple,
        dependent=tuple(sorted(dependent)),
        free=tuple(free),
        f0=f0,
        fs=tuple(fs),
        rbar=rbar,
    )


def component_sums(ctx: TermContext, values: Sequence[int]) -> List[int]:
    """``q(Z)`` for every component, summing ``values`` over tuples containing ``Z``."""
    q = [0] * len(ctx.components)
    for i, v in enumerate(values):
        if v:
            for k in ctx.incidence[i]:
                q[k] += v
    return q


def constraints_hold(ctx: TermContext, R: Sequence[int], C: Sequence[int]) -> bool:
    """Re-derive every balance condition from scratch and check it."""
    for comp, members in zip(ctx.components, ctx.component_index):
        if sum(C[i] for i in members) != sum(R[i] for i in members):
            return False
    return min(C, default=0) >= 0


# ----------------------------------------------------------------- solving C


def solve_balance(incidence: Sequence[Sequence[int]], targets: Sequence[int]) -> Iterator[List[int]]:
    """All nonnegative integer vectors ``x`` with ``sum(x[i] for i in class k) == targets[k]``.

    ``incidence[i]`` lists the classes variable ``i`` belongs to. Depth-first
    with propagation: a variable in a zero-target class is pinned to 0, and
    the last open variable of a class is forced to the remaining amount.
    """
    nvars = len(incidence)
    rem = list(targets)
    open_count = [0] * len(targets)
    live = []
    for i, inc in enumerate(incidence):
        if all(targets[k] > 0 for k in inc):
            live.append(i)
            for k in inc:
                open_count[k] += 1
    for k, t in enumerate(targets):
        if t and not open_count[k]:
            return
    x = [0] * nvars
    nlive = len(live)

    def rec(d: int):
        if d == nlive:
            yield list(x)
            return
        i = live[d]
        inc = incidence[i]
        ub = min(rem[k] for k in inc)
        forced = None
        for k in inc:
            if open_count[k] == 1:
                if forced is None:
                    forced = rem[k]
                elif forced != rem[k]:
                    return
        if forced is not None:
            if forced > ub:
                return
            lo, hi = forced, forced
        else:
            lo, hi = 0, ub
        for k in inc:
            open_count[k] -= 1
        for v in range(lo, hi + 1):
            x[i] = v
            for k in inc:
                rem[k] -= v
            yield from rec(d + 1)
            for k in inc:
                rem[k] += v
        x[i] = 0
        for k in inc:
            open_count[k] += 1

    yield from rec(0)


# ------------------------------------------------------------ enumeration


def work_estimate(m: int, n: int, form: str = "eq56") -> int:
    """Upper bound on the number of (R, C) pairs a form visits."""
    if m == 1:
        return 1
    ctx = term_context(m) if m <= 6 else None
    nfree = len(ctx.free) if ctx else factorial(m)
    if form == "eq65" and ctx is not None and m >= 3:
        outer = count_compositions(n, 2 + len(ctx.rbar))
    else:
        outer = count_compositions(n, factorial(m))
    return outer * (n + 1) ** nfree


def _check_budget(m: int, n: int, form: str, budget: Optional[int]) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    est = work_estimate(m, n, form)
    if est > limit:
        raise BudgetExceeded(f"K({m},{n}) by {form}", est, limit)


def enumerate_R(m: int, n: int, budget: Optional[int] = None) -> Iterator[RMap]:
    """Every composition of ``n`` over the ``m!`` tuples, lexicographically.

    Entries follow the order of :func:`~latin_census.index_algebra.index_tuples`.
    """
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    N = factorial(m)
    limit = DEFAULT_BUDGET if budget is None else budget
    count = count_compositions(n, N)
    if count > limit:
        raise BudgetExceeded(f"R-maps for m={m}, n={n}", count, limit)
    return compositions(n, N)


def enumerate_C(m: int, R: Sequence[int]) -> Iterator[CMap]:
    """Every C-map balancing ``R`` on all components."""
    ctx = term_context(m)
    if len(R) != ctx.size:
        raise ValueError(f"R must have {ctx.size} entries")
    q = component_sums(ctx, R)
    for c in solve_balance(ctx.incidence, q):
        yield tuple(c)


def mu_bounds(ctx: TermContext, q: Sequence[int]) -> List[int]:
    """Per tuple, the smallest ``q`` over its components."""
    return [min(q[k] for k in inc) for inc in ctx.incidence]


# ----------------------------------------------------------------- terms


def term_value(m: int, n: int, R: Sequence[int], C: Sequence[int], form: str = "eq56") -> Fraction:
    """One summand, as the sign form or the ``(-q)!`` form."""
    ctx = term_context(m)
    if form not in TERM_FORMS:
        raise ValueError(f"form must be one of {TERM_FORMS}")
    if sum(R) != n:
        raise ValueError("R must sum to n")
    q = component_sums(ctx, R)
    den = prod(factorial(r) for r in R) * prod(factorial(c) for c in C)
    if form == "eq56":
        sign = -1 if (n * m + sum(R[i] for i in ctx.odd)) % 2 else 1
        num = sign * factorial(n) * prod(factorial(x) for x in q)
    else:
        sign = -1 if (n * (m - 1)) % 2 else 1
        num = sign * neg_bang(n) * prod(neg_bang(x) for x in q)
    return Fraction(num, den)


def _prefix_chunks(n: int, nvars: int, depth: int = 2) -> List[Tuple[int, ...]]:
    depth = min(depth, nvars)
    out = []

    def rec(prefix, left):
        if len(prefix) == depth:
            out.append(prefix)
            return
        for v in range(left + 1):
            rec(prefix + (v,), left - v)

    rec((), n)
    return out


def _rs_with_prefix(n: int, nvars: int, prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    for rest in compositions(n - sum(prefix), nvars - len(prefix)):
        yield prefix + rest


def _eq56_chunk(args) -> ExactSum:
    m, n, negbang, prefix = args
    ctx = term_context(m)
    acc = ExactSum()
    nf = factorial(n)
    base_sign = -1 if (n * (m - 1)) % 2 else 1
    nb = neg_bang(n)
    for R in _rs_with_prefix(n, ctx.size, prefix):
        q = component_sums(ctx, R)
        rden = prod(factorial(r) for r in R if r > 1)
        if negbang:
            num = base_sign * nb * prod(neg_bang(x) for x in q)
        else:
            sign = -1 if (n * m + sum(R[i] for i in ctx.odd)) % 2 else 1
            num = sign * nf * prod(factorial(x) for x in q if x > 1)
        for C in solve_balance(ctx.incidence, q):
            acc.add(num, rden * prod(factorial(c) for c in C if c > 1))
    return acc


def _eq57_chunk(args) -> ExactSum:
    m, n, prefix = args
    ctx = term_context(m)
    acc = ExactSum()
    nf = factorial(n)
    single1 = ctx.singleton_at[0]
    z0 = ctx.zero_tuple
    c_tuples = [i for i in ctx.component_index[single1] if i != z0]
    for R in _rs_with_prefix(n, ctx.size, prefix):
        q = component_sums(ctx, R)
        sign = -1 if (n * m + sum(R[i] for i in ctx.odd)) % 2 else 1
        num = sign * nf * prod(factorial(x) for x in q if x > 1)
        rden = prod(factorial(r) for r in R if r > 1)
        mu = mu_bounds(ctx, q)
        for free_vals in _box([mu[i] for i in ctx.free]):
            C = [0] * ctx.size
            for i, v in zip(ctx.free, free_vals):
                C[i] = v
            ok = True
            for comp, d_tuple in ctx.dependent:
                d = q[comp] - sum(C[i] for i in ctx.component_index[comp] if i != d_tuple)
                if d < 0:
                    ok = False
                    break
                C[d_tuple] = d
            if not ok:
                continue
            c0 = q[single1] - sum(C[i] for i in c_tuples)
            if c0 < 0:
                continue
            C[z0] = c0
            for s in ctx.singleton_at[1:]:
                if sum(C[i] for i in ctx.component_index[s]) != q[s]:
                    raise ArithmeticError(f"singleton restrictions disagree for m={m}, R={R}")
            acc.add(num, rden * prod(factorial(c) for c in C if c > 1))
    return acc


def _box(bounds: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    if not bounds:
        yield ()
        return
    head, rest = bounds[0], bounds[1:]
    for v in range(head + 1):
        for tail in _box(rest):
            yield (v,) + tail


def _eq65_chunk(args) -> ExactSum:
    m, n, prefix = args
    ctx = term_context(m)
    acc = ExactSum()
    nf = factorial(n)
    f0_mult = factorial(m - 1)
    f_mult = factorial(m - 2)
    rbar = ctx.rbar
    odd = set(ctx.odd)
    rbar_odd = [j for j, i in enumerate(rbar) if i in odd]
    # component bookkeeping restricted to the remaining tuples
    pos_in_rbar = {i: j for j, i in enumerate(rbar)}
    mid_comps = [k for k, c in enumerate(ctx.components) if 2 <= len(c) <= m - 2]
    mid_members = [[pos_in_rbar[i] for i in ctx.component_index[k]] for k in mid_comps]
    single_members = [[pos_in_rbar[i] for i in ctx.component_index[s] if i in pos_in_rbar] for s in ctx.singleton_at]
    dep = [(mid_comps.index(k), pos_in_rbar[t]) for k, t in ctx.dependent if k in mid_comps]
    free = [pos_in_rbar[i] for i in ctx.free]
    z0 = pos_in_rbar[ctx.zero_tuple]
    c_from_single1 = [j for j in single_members[0] if j != z0]
    # for the mu bound: per remaining tuple, which q-values bound it
    bound_of = []
    for i in rbar:
        entries = []
        for k in ctx.incidence[i]:
            if k in ctx.singleton_at:
                entries.append(("s", ctx.singleton_at.index(k)))
            else:
                entries.append(("z", mid_comps.index(k)))
        bound_of.append(entries)
    nb = len(rbar)
    for vals in _rs_with_prefix(n, 2 + nb, prefix):
        f0, f = vals[0], vals[1]
        rv = vals[2:]
        qbar = [sum(rv[j] for j in mem) for mem in single_members]
        qmid = [sum(rv[j] for j in mem) for mem in mid_members]
        a = sum(qbar)
        sign = -1 if (n * m + f0 + sum(rv[j] for j in rbar_odd)) % 2 else 1
        num = sign * f0_mult**f0 * f_mult**f * nf
        num *= prod(range(a + m, a + m + f))  # (f + a + m - 1)! / (a + m - 1)!
        num *= prod(factorial(x) for x in qbar) * prod(factorial(x) for x in qmid)
        den = factorial(f0) * factorial(f) * prod(factorial(r) for r in rv)
        mus = []
        for j in free:
            mus.append(min(qbar[idx] if kind == "s" else qmid[idx] for kind, idx in bound_of[j]))
        for free_vals in _box(mus):
            C = [0] * nb
            for j, v in zip(free, free_vals):
                C[j] = v
            ok = True
            for mi, dj in dep:
                d = qmid[mi] - sum(C[j] for j in mid_members[mi] if j != dj)
                if d < 0:
                    ok = False
                    break
                C[dj] = d
            if not ok:
                continue
            c0 = qbar[0] - sum(C[j] for j in c_from_single1)
            if c0 < 0:
                continue
            C[z0] = c0
            acc.add(num, den * prod(factorial(c) for c in C))
    return acc


def _eq65_m2(n: int) -> ExactSum:
    # For m = 2 the fixed-point class F_1 and F_2 are the same tuple 00, so it
    # is summed once: the term reduces to (-1)^f0 n!/f0! with f0 + f = n.
    acc = ExactSum()
    nf = factorial(n)
    for f0 in range(n + 1):
        acc.add((-1) ** f0 * nf, factorial(f0))
    return acc


# ---------------------------------------------------------- permutation form


@dataclass(frozen=True)
class CycleContext:
    m: int
    perms: Tuple[Permutation, ...]
    cycles: Tuple[Tuple[int, ...], ...]
    incidence: Tuple[Tuple[int, ...], ...]
    odd: Tuple[int, ...]


@lru_cache(maxsize=None)
def cycle_context(m: int) -> CycleContext:
    perms = tuple(all_permutations(m))
    cycle_sets = [standard_cycles(p) for p in perms]
    cycles = sorted({c for cs in cycle_sets for c in cs}, key=lambda c: (len(c), c))
    idx = {c: k for k, c in enumerate(cycles)}
    incidence = tuple(tuple(idx[c] for c in cs) for cs in cycle_sets)
    odd = tuple(i for i, cs in enumerate(cycle_sets) if len(cs) % 2)
    return CycleContext(m, perms, tuple(cycles), incidence, odd)


def _eq81_chunk(args) -> ExactSum:
    m, n, prefix = args
    ctx = cycle_context(m)
    acc = ExactSum()
    nf = factorial(n)
    ncyc = len(ctx.cycles)
    for R in _rs_with_prefix(n, len(ctx.perms), prefix):
        q = [0] * ncyc
        for i, r in enumerate(R):
            if r:
                for k in ctx.incidence[i]:
                    q[k] += r
        sign = -1 if (n * m + sum(R[i] for i in ctx.odd)) % 2 else 1
        # the n! is the factor of the empty component, q = sum R = n
        num = sign * nf * prod(factorial(x) for x in q if x > 1)
        rden = prod(factorial(r) for r in R if r > 1)
        for C in solve_balance(ctx.incidence, q):
            acc.add(num, rden * prod(factorial(c) for c in C if c > 1))
    return acc


# ------------------------------------------------------------- entry points


def k_general(
    m: int,
    n: int,
    form: str = "eq56",
    jobs: int = 1,
    budget: Optional[int] = None,
    negbang: bool = False,
) -> int:
    """K(m, n) by one of the general evaluators.

    ``negbang`` switches ``eq56`` to the ``(-q)!`` form of the summand.
    """
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if m == 1:
        return 1
    _check_budget(m, n, form, budget)
    if form == "eq56":
        chunks = [(m, n, negbang, p) for p in _prefix_chunks(n, factorial(m))]
        total = partitioned_sum(_eq56_chunk, chunks, jobs)
    elif form == "eq57":
        chunks = [(m, n, p) for p in _prefix_chunks(n, factorial(m))]
        total = partitioned_sum(_eq57_chunk, chunks, jobs)
    elif form == "eq65":
        if m == 2:
            total = _eq65_m2(n)
        else:
            ctx = term_context(m)
            chunks = [(m, n, p) for p in _prefix_chunks(n, 2 + len(ctx.rbar))]
            total = partitioned_sum(_eq65_chunk, chunks, jobs)
    else:
        chunks = [(m, n, p) for p in _prefix_chunks(n, factorial(m))]
        total = partitioned_sum(_eq81_chunk, chunks, jobs)
    return total.integer()


def latin_squares(n: int, jobs: int = 1, budget: Optional[int] = None, form: str = "eq56") -> int:
    """L(n) = n! K(n, n), with K from the general formula."""
    if n < 1:
        raise ValueError("n must be positive")
    return factorial(n) * k_general(n, n, form=form, jobs=jobs, budget=budget)


def variable_counts(m: int) -> Dict[str, int]:
    """Sizes of the variable families, for bookkeeping checks."""
    ctx = term_context(m)
    return {
        "R": ctx.size,
        "F0": len(ctx.f0),
        "Fs": len(ctx.fs[0]) if ctx.fs else 0,
        "Rbar": len(ctx.rbar),
        "D": len(ctx.dependent) + 1,
        "C_minus_D": len(ctx.free),
        "components": len(ctx.components),
    }


def as_maps(m: int, values: Sequence[int]) -> Mapping[IndexTuple, int]:
    ctx = term_context(m)
    return dict(zip(ctx.tuples, values))
