"""Partition-and-reduce over a worker pool.

Workers return :class:`~latin_census.numeric.ExactSum` partials; because the
arithmetic is exact, the merged total does not depend on the schedule.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

from .numeric import ExactSum

T = TypeVar("T")


def partitioned_sum(worker: Callable[[T], ExactSum], chunks: Sequence[T], jobs: int = 1) -> ExactSum:
    """Apply ``worker`` to every chunk and merge the partial sums.

    ``worker`` must be a module-level function so it can be pickled.
    """
    total = ExactSum()
    if jobs <= 1 or len(chunks) <= 1:
        for chunk in chunks:
            total.merge(worker(chunk))
        return total
    with ProcessPoolExecutor(max_workers=min(jobs, len(chunks))) as pool:
        for part in pool.map(worker, chunks):
            total.merge(part)
    return total
