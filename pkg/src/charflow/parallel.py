"""Order-preserving parallel map; width comes from ``CHARFLOW_THREADS``."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def thread_count(default: int = 1) -> int:
    raw = os.environ.get("CHARFLOW_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def pmap(fn, items, workers: int | None = None, chunksize: int = 16) -> list:
    items = list(items)
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
