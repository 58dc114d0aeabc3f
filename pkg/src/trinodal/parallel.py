"""Deterministic work splitting for the sweep and statistics drivers.

The work is split into chunks whose boundaries depend only on the job
size, never on the worker count, and results are reassembled in chunk
order.  Output is therefore byte-identical for any number of workers.
"""

import multiprocessing
import os

__all__ = ["resolve_workers", "chunk_bounds", "map_chunks"]


def resolve_workers(workers=None):
    """Worker count: explicit argument, else TRINODAL_WORKERS, else 1."""
    if workers is None:
        workers = os.environ.get("TRINODAL_WORKERS", "1")
    workers = int(workers)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return workers


def chunk_bounds(n_items, chunk_size):
    """Half-open (lo, hi) index ranges covering range(n_items)."""
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    return [(lo, min(lo + chunk_size, n_items))
            for lo in range(0, n_items, chunk_size)]


def map_chunks(func, items, workers=1):
    """[func(item) for item in items], optionally on a process pool.

    The item list and result order are identical for every worker count;
    func must be a module-level function for the pooled path.
    """
    workers = resolve_workers(workers)
    if workers == 1 or len(items) <= 1:
        return [func(item) for item in items]
    with multiprocessing.Pool(workers) as pool:
        return pool.map(func, items)
