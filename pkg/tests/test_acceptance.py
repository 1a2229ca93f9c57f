"""Acceptance gate: one PASS/FAIL line per criterion.

Run with pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""
import itertools
import random
import sys
import time
from collections import Counter
from math import factorial

import pytest

from latin_census import closed_forms, general, harness, oracle
from latin_census.boards import Board, diagonal_board, hit_numbers
from latin_census.index_algebra import (
    index_tuples,
    multiplicities,
    partitions,
    permutation_from_tuple,
    prop41_counts,
    prop42_count,
    structure,
    tuple_from_permutation,
    zeta,
)
from latin_census.permutations import all_permutations, covering_table, from_covering_table, standard_cycles

RESULTS = []


def record(number, label, ok, elapsed, limit, detail=""):
    ok = bool(ok) and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {label:<58} {elapsed:7.2f}s (limit {limit:g}s)"
    if detail:
        line += f"  {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


# -------------------------------------------------------------- criteria


def check_derangements():
    def run():
        return all(closed_forms.derangements(n) == oracle.brute_derangements(n) for n in range(10))

    ok, dt = timed(run)
    return record(1, "derangement formula = brute force, n = 0..9", ok, dt, 1)


def check_touchard():
    def run():
        return all(closed_forms.touchard(n) == oracle.brute_very_reduced(2, n) for n in range(3, 10))

    ok, dt = timed(run)
    return record(2, "menage formula = brute very reduced (2, n), n = 3..9", ok, dt, 5)


def k3_rows():
    return [(n, closed_forms.k3_yamamoto(n), closed_forms.k3_riordan(n), oracle.brute_reduced_rectangles(3, n)) for n in range(3, 8)]


def check_k3():
    rows, dt = timed(k3_rows)
    ok = all(a == b == c for _, a, b, c in rows)
    return record(3, "K(3,n): two closed forms = oracle, n = 3..7", ok, dt, 30, " ".join(str(r[3]) for r in rows))


def k4_rows(jobs=1):
    return [
        (
            n,
            closed_forms.k4_explicit(n, "pranesachar", jobs=jobs),
            closed_forms.k4_explicit(n, "simplified", jobs=jobs),
            oracle.brute_reduced_rectangles(4, n, jobs=jobs),
        )
        for n in range(4, 7)
    ]


def check_k4():
    rows, dt = timed(k4_rows)
    ok = all(a == b == c for _, a, b, c in rows)
    return record(4, "K(4,n): two four-row sums = oracle, n = 4..6", ok, dt, 120, " ".join(str(r[3]) for r in rows))


def direct_hits(board, n):
    out = [0] * (n + 1)
    for word in itertools.permutations(range(1, n + 1)):
        out[sum((i, word[i - 1]) in board for i in range(1, n + 1))] += 1
    return out


def check_hit_numbers():
    def run():
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 6)
            b = Board({(rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, n * n))})
            hits = hit_numbers(b, n)
            if hits != direct_hits(b, n) or sum(hits) != factorial(n):
                return False
        return all(hit_numbers(diagonal_board(n), n)[0] == closed_forms.derangements(n) for n in range(1, 8))

    ok, dt = timed(run)
    return record(5, "hit numbers = direct classification on 50 boards", ok, dt, 10)


def check_index_counting():
    def run():
        for m in range(1, 7):
            for z in range(m):
                sets = Counter()
                for t in index_tuples(m):
                    rest = frozenset(x for c in structure(t).components if c.anchor != 1 for x in c.members)
                    if len(rest) == z:
                        sets[rest] += 1
                distinct, per_set = prop41_counts(m, z)
                if len(sets) != distinct or set(sets.values()) != {per_set}:
                    return False
            shapes = Counter(structure(t).block_sizes() for t in index_tuples(m))
            for lam in partitions(m):
                if shapes[lam] != prop42_count(m, multiplicities(lam)):
                    return False
        return True

    ok, dt = timed(run)
    return record(6, "index-set and structure counts = enumeration, m <= 6", ok, dt, 10)


def check_bijection():
    def run():
        for m in range(1, 8):
            for p in all_permutations(m):
                if from_covering_table(covering_table(p)) != p:
                    return False
                t = tuple_from_permutation(p)
                if permutation_from_tuple(t) != p or zeta(t) != len(standard_cycles(p)):
                    return False
                if m <= 6 and structure(t).block_sizes() != p.cycle_type():
                    return False
        return True

    ok, dt = timed(run)
    return record(7, "covering-table bijection, zero count = cycle count", ok, dt, 30)


FORM_GRID = [(2, n) for n in range(2, 7)] + [(3, n) for n in range(3, 6)] + [(4, 4)]


def form_rows(jobs=1):
    rows = []
    for m, n in FORM_GRID:
        vals = [general.k_general(m, n, form=f, jobs=jobs) for f in general.FORMS]
        vals.append(general.k_general(m, n, jobs=jobs, negbang=True))
        rows.append((m, n, *vals))
    return rows


def check_forms(jobs=4):
    rows, dt = timed(lambda: form_rows(jobs))
    ok = all(len(set(r[2:])) == 1 for r in rows)
    return record(8, f"four forms and (-q)! form agree on the grid, jobs {jobs}", ok, dt, 300)


def check_specializations():
    def run():
        two = all(general.k_general(2, n) == closed_forms.derangements(n) for n in range(7))
        three = all(general.k_general(3, n) == closed_forms.k3_yamamoto(n) for n in range(6))
        return two and three

    ok, dt = timed(run)
    return record(9, "general formula = D_n (m=2) and three-row form (m=3)", ok, dt, 60)


def check_oracle_squares():
    def run():
        vals = []
        for n in range(1, 6):
            v = oracle.brute_latin_squares(n)
            if v != factorial(n) * oracle.brute_reduced_rectangles(n, n):
                return None
            vals.append(v)
        return vals

    vals, dt = timed(run)
    ok = vals == [1, 2, 12, 576, 161280]
    return record(10, "oracle L(n) = n! K(n,n), n <= 5", ok, dt, 60, str(vals))


CENTRAL_METHODS = ["oracle", "general_eq56", "general_eq57", "general_eq65", "general_eq81", "latin_squares_eq91"]


def central_verdicts(jobs=1):
    return harness.verify_grid(4, 5, min_m=4, methods=CENTRAL_METHODS, jobs=jobs, timings=False)


def check_central_claim():
    report, dt = timed(central_verdicts)
    wanted = {("K", 4, 4), ("K", 4, 5), ("L", 4, 4)}
    vs = [v for v in report.verdicts if v.method_a == "oracle" and not v.skipped]
    produced = {(v.quantity, v.m, v.n) for v in vs}
    classified = all(not v.mandatory for v in vs) and all(v.equal == (int(v.value_a) == int(v.value_b)) for v in vs)
    text = harness.format_verify(report)
    shows_values = all(
        f"{v.method_a}={v.value_a} {v.method_b}={v.value_b}" in text for v in report.reported_mismatches
    )
    verdict = "all equal" if all(v.equal for v in vs) else f"{len(report.reported_mismatches)} mismatches"
    ok = wanted <= produced and classified and shows_values
    return record(11, "general formula vs oracle at m=4 and L(4) recorded", ok, dt, 300, verdict)


def determinism_outputs(jobs):
    three = k3_rows()
    four = k4_rows(jobs)
    forms = form_rows(jobs)
    table = harness.build_table("K", [3, 4], range(4, 7), jobs=jobs, timings=False)
    return repr((three, four, forms)) + harness.table_to_csv(table)


def check_determinism():
    def run():
        return determinism_outputs(1) == determinism_outputs(8)

    ok, dt = timed(run)
    return record(12, "criteria 3, 4, 8 outputs identical at jobs 1 and 8", ok, dt, 600)


CHECKS = [
    check_derangements,
    check_touchard,
    check_k3,
    check_k4,
    check_hit_numbers,
    check_index_counting,
    check_bijection,
    check_forms,
    check_specializations,
    check_oracle_squares,
    check_central_claim,
    check_determinism,
]


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i:02d}" for i in range(1, len(CHECKS) + 1)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    results = [check() for check in CHECKS]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
