"""Deterministic work distribution for batch scans.

Workers only decide *who* computes a chunk; the chunk list and the merge order
are fixed by the caller, so results are identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

from .errors import ArgumentError

ENV_THREADS = "CHEBLAB_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    """Worker count taken from CHEBLAB_THREADS (default 1)."""
    raw = os.environ.get(ENV_THREADS, "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ArgumentError(f"{ENV_THREADS} must be an integer, got {raw!r}") from exc
    return max(1, n)


def map_ordered(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """Apply fn to every item, returning results in input order.

    workers <= 1 runs inline; otherwise a thread pool computes chunks
    concurrently while the output order stays that of ``items``.
    """
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
