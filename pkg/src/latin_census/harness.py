"""Method registry, cross-validation grid and value tables.

Every method evaluates one or more quantities:

* ``K`` reduced m x n rectangles, ``L`` Latin squares of order n,
* ``V`` very reduced rectangles, ``D`` derangements, ``U`` menage numbers.
"""
from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import closed_forms, general, oracle
from .cache import ResultCache
from .errors import BudgetExceeded, InapplicableMethod

QUANTITIES = ("K", "L", "V", "D", "U")

METHOD_IDS = (
    "oracle",
    "derangements",
    "touchard",
    "k3_yamamoto",
    "k3_riordan",
    "k4_pranesachar",
    "k4_simplified",
    "general_eq56",
    "general_eq57",
    "general_eq65",
    "general_eq81",
    "latin_squares_eq91",
)

TABLE_COLUMNS = ("quantity", "m", "n", "method", "value", "elapsed_ms")


@dataclass(frozen=True)
class Method:
    """A way of computing some quantities.

    ``check(quantity, m, n)`` returns ``None`` when the method applies and a
    reason string otherwise; ``compute(quantity, m, n, jobs, budget)``
    returns the exact value.
    """

    name: str
    kind: str  # "oracle", "closed" or "general"
    check: Callable[[str, int, int], Optional[str]]
    compute: Callable[[str, int, int, int, Optional[int]], int]

    def applicable(self, quantity: str, m: int, n: int) -> bool:
        return self.check(quantity, m, n) is None

    def evaluate(self, quantity: str, m: int, n: int, jobs: int = 1, budget: Optional[int] = None) -> int:
        reason = self.check(quantity, m, n)
        if reason is not None:
            raise InapplicableMethod(f"{self.name} does not apply to {quantity}(m={m}, n={n}): {reason}")
        return self.compute(quantity, m, n, jobs, budget)


# --------------------------------------------------------------- methods


def _oracle_check(q, m, n):
    if q == "K":
        return None if 1 <= m <= n else "needs 1 <= m <= n"
    if q == "L":
        return None if n >= 1 else "needs n >= 1"
    if q == "V":
        return None if 1 <= m < n else "needs 1 <= m < n"
    if q == "D":
        return None if n >= 0 else "needs n >= 0"
    if q == "U":
        return None if n >= 3 else "needs n >= 3"
    return f"unknown quantity {q}"


def _oracle_compute(q, m, n, jobs, budget):
    if q == "K":
        return oracle.brute_reduced_rectangles(m, n, budget=budget, jobs=jobs)
    if q == "L":
        return oracle.brute_latin_squares(n, budget=budget, jobs=jobs)
    if q == "V":
        return oracle.brute_very_reduced(m, n, budget=budget)
    if q == "D":
        return oracle.brute_derangements(n, budget=budget)
    return oracle.brute_very_reduced(2, n, budget=budget)


def _fixed_m_check(mm, q, m, n):
    if q != "K":
        return "only evaluates K"
    if m != mm:
        return f"needs m = {mm}"
    return None if n >= 0 else "needs n >= 0"


def _fixed_m(mm: int):
    return partial(_fixed_m_check, mm)


def _derangements_check(q, m, n):
    if q == "D":
        return None if n >= 0 else "needs n >= 0"
    return _fixed_m(2)(q, m, n)


def _derangements_compute(q, m, n, jobs, budget):
    return closed_forms.derangements(n)


def _touchard_check(q, m, n):
    if q == "U":
        return None if n >= 1 else "needs n >= 1"
    if q == "V":
        if m != 2:
            return "needs m = 2"
        return None if n >= 3 else "needs n >= 3"
    return "only evaluates U and V"


def _touchard_compute(q, m, n, jobs, budget):
    return closed_forms.touchard(n)


def _k3_yamamoto(q, m, n, jobs, budget):
    return closed_forms.k3_yamamoto(n)


def _k3_riordan(q, m, n, jobs, budget):
    return closed_forms.k3_riordan(n)


def _k4_pranesachar(q, m, n, jobs, budget):
    return closed_forms.k4_explicit(n, "pranesachar", jobs=jobs)


def _k4_simplified(q, m, n, jobs, budget):
    return closed_forms.k4_explicit(n, "simplified", jobs=jobs)


def _general_check(q, m, n):
    if q == "K":
        return None if m >= 1 and n >= 0 else "needs m >= 1, n >= 0"
    if q == "D":
        return None if n >= 0 else "needs n >= 0"
    return "only evaluates K and D"


def _general_compute(form, q, m, n, jobs, budget):
    mm = 2 if q == "D" else m
    return general.k_general(mm, n, form=form, jobs=jobs, budget=budget)


def _general(form: str):
    return partial(_general_compute, form)


def _eq91_check(q, m, n):
    if q != "L":
        return "only evaluates L"
    return None if n >= 1 else "needs n >= 1"


def _eq91_compute(q, m, n, jobs, budget):
    return general.latin_squares(n, jobs=jobs, budget=budget)


METHODS: Dict[str, Method] = {
    "oracle": Method("oracle", "oracle", _oracle_check, _oracle_compute),
    "derangements": Method("derangements", "closed", _derangements_check, _derangements_compute),
    "touchard": Method("touchard", "closed", _touchard_check, _touchard_compute),
    "k3_yamamoto": Method("k3_yamamoto", "closed", _fixed_m(3), _k3_yamamoto),
    "k3_riordan": Method("k3_riordan", "closed", _fixed_m(3), _k3_riordan),
    "k4_pranesachar": Method("k4_pranesachar", "closed", _fixed_m(4), _k4_pranesachar),
    "k4_simplified": Method("k4_simplified", "closed", _fixed_m(4), _k4_simplified),
    "general_eq56": Method("general_eq56", "general", _general_check, _general("eq56")),
    "general_eq57": Method("general_eq57", "general", _general_check, _general("eq57")),
    "general_eq65": Method("general_eq65", "general", _general_check, _general("eq65")),
    "general_eq81": Method("general_eq81", "general", _general_check, _general("eq81")),
    "latin_squares_eq91": Method("latin_squares_eq91", "general", _eq91_check, _eq91_compute),
}

# cheapest-first preference used by tables
AUTO_ORDER: Dict[str, Tuple[str, ...]] = {
    "K": ("oracle", "derangements", "k3_riordan", "k4_simplified", "general_eq65", "general_eq56"),
    "L": ("oracle", "latin_squares_eq91"),
    "V": ("oracle", "touchard"),
    "D": ("oracle", "derangements"),
    "U": ("oracle", "touchard"),
}


def conventional_m(quantity: str, m: int, n: int) -> int:
    """The m recorded for one-parameter quantities."""
    if quantity in ("D", "U"):
        return 2
    if quantity == "L":
        return n
    return m


# -------------------------------------------------------------- evaluation


@dataclass
class Outcome:
    value: Optional[int]
    elapsed_ms: int
    skipped: str = ""  # reason when no value was produced


def _run(job) -> Outcome:
    method, quantity, m, n, jobs, budget = job
    t0 = time.perf_counter()
    try:
        value = method.evaluate(quantity, m, n, jobs=jobs, budget=budget)
    except BudgetExceeded as exc:
        return Outcome(None, 0, str(exc))
    return Outcome(value, int(round((time.perf_counter() - t0) * 1000)))


def evaluate_many(
    jobs_list: Sequence[Tuple[Method, str, int, int]],
    jobs: int = 1,
    budget: Optional[int] = None,
    cache: Optional[ResultCache] = None,
) -> List[Outcome]:
    """Evaluate (method, quantity, m, n) items; cache hits cost nothing.

    With ``jobs > 1`` the items run on a process pool, each single-threaded.
    Results come back in input order.
    """
    cached = cache.load() if cache else {}
    results: List[Optional[Outcome]] = [None] * len(jobs_list)
    todo = []
    for i, (method, q, m, n) in enumerate(jobs_list):
        hit = cached.get(f"{q}:{m}:{n}:{method.name}")
        if hit is not None:
            results[i] = Outcome(int(hit), 0)
        else:
            todo.append(i)
    payload = [(jobs_list[i][0], jobs_list[i][1], jobs_list[i][2], jobs_list[i][3], 1, budget) for i in todo]
    if jobs > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            computed = list(pool.map(_run, payload))
    else:
        computed = [_run(p) for p in payload]
    fresh = {}
    for i, out in zip(todo, computed):
        results[i] = out
        if out.value is not None:
            method, q, m, n = jobs_list[i]
            fresh[f"{q}:{m}:{n}:{method.name}"] = str(out.value)
    if cache is not None:
        cache.update(fresh)
    return results  # type: ignore[return-value]


def evaluate(
    method: str,
    quantity: str,
    m: int,
    n: int,
    jobs: int = 1,
    budget: Optional[int] = None,
    cache: Optional[ResultCache] = None,
    registry: Mapping[str, Method] = METHODS,
) -> Outcome:
    """One value, using ``jobs`` workers inside the method itself."""
    if quantity not in QUANTITIES:
        raise ValueError(f"quantity must be one of {QUANTITIES}")
    try:
        meth = registry[method]
    except KeyError:
        raise InapplicableMethod(f"unknown method {method!r}") from None
    reason = meth.check(quantity, m, n)
    if reason is not None:
        raise InapplicableMethod(f"{method} does not apply to {quantity}(m={m}, n={n}): {reason}")
    if cache is not None:
        hit = cache.get(quantity, m, n, method)
        if hit is not None:
            return Outcome(int(hit), 0)
    t0 = time.perf_counter()
    value = meth.compute(quantity, m, n, jobs, budget)
    out = Outcome(value, int(round((time.perf_counter() - t0) * 1000)))
    if cache is not None:
        cache.put(quantity, m, n, method, str(value))
    return out


# ------------------------------------------------------------------ verify


@dataclass
class Verdict:
    quantity: str
    m: int
    n: int
    method_a: str
    method_b: str
    value_a: str
    value_b: str
    equal: bool
    mandatory: bool
    elapsed_ms_a: int = 0
    elapsed_ms_b: int = 0
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        if self.equal:
            return "equal"
        return "MISMATCH" if self.mandatory else "MISMATCH (report-only)"


VERDICT_COLUMNS = (
    "quantity", "m", "n", "method_a", "method_b", "value_a", "value_b",
    "equal", "mandatory", "status", "elapsed_ms_a", "elapsed_ms_b",
)


def is_mandatory(quantity: str, m: int, method_a: Method, method_b: Method) -> bool:
    """Whether a disagreement should fail the run.

    The general formula checked against an independent method is only
    reported for m >= 4 and for Latin squares; agreement among its own forms,
    and among oracle and closed forms, is always required.
    """
    kinds = {method_a.kind, method_b.kind}
    if kinds == {"general"} or "general" not in kinds:
        return True
    return quantity != "L" and m <= 3


@dataclass
class VerifyReport:
    verdicts: List[Verdict] = field(default_factory=list)

    @property
    def mandatory_failures(self) -> List[Verdict]:
        return [v for v in self.verdicts if v.mandatory and not v.skipped and not v.equal]

    @property
    def reported_mismatches(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.mandatory and not v.skipped and not v.equal]

    @property
    def ok(self) -> bool:
        return not self.mandatory_failures

    def summary(self) -> Dict[str, object]:
        return {
            "verdicts": len(self.verdicts),
            "equal": sum(1 for v in self.verdicts if v.equal and not v.skipped),
            "skipped": sum(1 for v in self.verdicts if v.skipped),
            "mandatory_mismatches": len(self.mandatory_failures),
            "report_only_mismatches": len(self.reported_mismatches),
            "ok": self.ok,
        }


def verify_grid(
    max_m: int,
    max_n: int,
    methods: Optional[Sequence[str]] = None,
    min_m: int = 2,
    jobs: int = 1,
    budget: Optional[int] = None,
    cache: Optional[ResultCache] = None,
    registry: Mapping[str, Method] = METHODS,
    timings: bool = True,
) -> VerifyReport:
    """Compare every pair of applicable methods on each cell ``min_m <= m <= n <= max_n``.

    Cells with ``m == n`` also compare Latin-square methods when selected.
    """
    names = list(methods) if methods else list(registry)
    for name in names:
        if name not in registry:
            raise InapplicableMethod(f"unknown method {name!r}")
    cells: List[Tuple[str, int, int, List[str]]] = []
    for m in range(min_m, max_m + 1):
        for n in range(m, max_n + 1):
            k_methods = [x for x in names if registry[x].applicable("K", m, n)]
            cells.append(("K", m, n, k_methods))
            if m == n:
                l_methods = [x for x in names if registry[x].applicable("L", m, n)]
                if len(l_methods) >= 2:
                    cells.append(("L", m, n, l_methods))
    work = [(registry[x], q, m, n) for q, m, n, xs in cells for x in xs]
    outcomes = evaluate_many(work, jobs=jobs, budget=budget, cache=cache)
    by_key = {(q, m, n, meth.name): out for (meth, q, m, n), out in zip(work, outcomes)}

    report = VerifyReport()
    for q, m, n, xs in cells:
        for a, b in combinations(xs, 2):
            oa, ob = by_key[(q, m, n, a)], by_key[(q, m, n, b)]
            skipped = oa.value is None or ob.value is None
            va = "" if oa.value is None else str(oa.value)
            vb = "" if ob.value is None else str(ob.value)
            report.verdicts.append(
                Verdict(
                    quantity=q,
                    m=m,
                    n=n,
                    method_a=a,
                    method_b=b,
                    value_a=va,
                    value_b=vb,
                    equal=(not skipped) and oa.value == ob.value,
                    mandatory=is_mandatory(q, m, registry[a], registry[b]),
                    elapsed_ms_a=oa.elapsed_ms if timings else 0,
                    elapsed_ms_b=ob.elapsed_ms if timings else 0,
                    skipped=skipped,
                )
            )
    return report


def format_verify(report: VerifyReport, fmt: str = "text") -> str:
    if fmt == "json":
        rows = [{**asdict(v), "status": v.status} for v in report.verdicts]
        return json.dumps({"verdicts": rows, "summary": report.summary()}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(VERDICT_COLUMNS)
        for v in report.verdicts:
            row = {**asdict(v), "status": v.status}
            w.writerow([_csv_field(row[c]) for c in VERDICT_COLUMNS])
        return buf.getvalue()
    lines = []
    for v in report.verdicts:
        tag = "" if v.mandatory else " [report-only]"
        if v.skipped:
            lines.append(f"SKIP  {v.quantity}({v.m},{v.n}) {v.method_a} vs {v.method_b}: over budget{tag}")
        elif v.equal:
            lines.append(f"ok    {v.quantity}({v.m},{v.n}) {v.method_a} = {v.method_b} = {v.value_a}{tag}")
        else:
            flag = "FAIL " if v.mandatory else "NOTE "
            lines.append(
                f"{flag} {v.quantity}({v.m},{v.n}) {v.method_a} = {v.value_a} but {v.method_b} = {v.value_b}{tag}"
            )
    s = report.summary()
    lines.append(
        f"summary: {s['verdicts']} verdicts, {s['equal']} equal, {s['skipped']} skipped, "
        f"{s['mandatory_mismatches']} mandatory mismatches, {s['report_only_mismatches']} report-only mismatches"
    )
    for v in report.mandatory_failures:
        lines.append(f"  mandatory mismatch {v.quantity}({v.m},{v.n}): {v.method_a}={v.value_a} {v.method_b}={v.value_b}")
    for v in report.reported_mismatches:
        lines.append(f"  REPORTED mismatch {v.quantity}({v.m},{v.n}): {v.method_a}={v.value_a} {v.method_b}={v.value_b}")
    return "\n".join(lines) + "\n"


def _csv_field(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


# ------------------------------------------------------------------- table


@dataclass(frozen=True)
class TableRow:
    quantity: str
    m: int
    n: int
    method: str
    value: str
    elapsed_ms: int


def build_table(
    quantity: str,
    rows: Iterable[int],
    cols: Iterable[int],
    budget: Optional[int] = None,
    jobs: int = 1,
    cache: Optional[ResultCache] = None,
    registry: Mapping[str, Method] = METHODS,
    timings: bool = True,
) -> List[TableRow]:
    """Values over the grid using the first workable method from :data:`AUTO_ORDER`."""
    if quantity not in QUANTITIES:
        raise ValueError(f"quantity must be one of {QUANTITIES}")
    cols = list(cols)
    if quantity in ("K", "V"):
        cells = [(m, n) for m in rows for n in cols]
    else:
        cells = [(conventional_m(quantity, 0, n), n) for n in cols]
    out = []
    for m, n in cells:
        row = None
        for name in AUTO_ORDER[quantity]:
            meth = registry.get(name)
            if meth is None or not meth.applicable(quantity, m, n):
                continue
            try:
                res = evaluate(name, quantity, m, n, jobs=jobs, budget=budget, cache=cache, registry=registry)
            except BudgetExceeded:
                continue
            row = TableRow(quantity, m, n, name, str(res.value), res.elapsed_ms if timings else 0)
            break
        if row is None:
            row = TableRow(quantity, m, n, "skipped", "", 0)
        out.append(row)
    return out


def table_to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for r in rows:
        w.writerow([r.quantity, r.m, r.n, r.method, r.value, r.elapsed_ms])
    return buf.getvalue()


def table_to_json(rows: Sequence[TableRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"


def read_table_csv(text: str) -> List[TableRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != TABLE_COLUMNS:
        raise ValueError(f"unexpected table header {header}")
    return [TableRow(q, int(m), int(n), meth, val, int(ms)) for q, m, n, meth, val, ms in reader]


def rows_to_cache(rows: Iterable[TableRow], cache: ResultCache) -> int:
    """Store every computed row; returns how many entries were written."""
    entries = {f"{r.quantity}:{r.m}:{r.n}:{r.method}": r.value for r in rows if r.value != ""}
    cache.update(entries)
    return len(entries)
