"""Ordered thread-pool map capped by ``PSICAL_THREADS``."""
import os
from concurrent.futures import ThreadPoolExecutor


def worker_count():
    raw = os.environ.get("PSICAL_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    return max(1, n)


def ordered_map(func, items):
    """``[func(x) for x in items]``, possibly concurrent; results keep input order."""
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items))
