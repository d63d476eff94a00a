"""Seeded substreams and worker fan-out.

Every random quantity in the package is drawn from a Philox generator keyed by
``(seed, *keys)``. Work is split into fixed-size chunks whose keys do not depend
on how many workers run them, so results are identical for any thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK = 1 << 16


def substream(seed, *keys):
    """Return an independent generator for the stream addressed by ``keys``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))


def worker_count():
    """Number of workers, capped by the ``EPIUQ_THREADS`` environment variable."""
    env = os.environ.get("EPIUQ_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def chunk_bounds(total, size=CHUNK):
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def pmap(func, items, workers=None):
    """Ordered map over ``items``, threaded when more than one worker is allowed."""
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))
