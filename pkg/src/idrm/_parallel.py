import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    """Worker count from ``INEQ_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("INEQ_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items, workers=None):
    """Order-preserving map; results never depend on the worker count."""
    items = list(items)
    workers = thread_cap() if workers is None else max(1, int(workers))
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
