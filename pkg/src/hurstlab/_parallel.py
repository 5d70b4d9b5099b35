"""Keyed parallel map over independent work items.

Results are assembled by key, never by completion order, so output is
identical for any worker count.  Workers are plain processes; jobs=1 runs
inline (which also keeps monkeypatching effective in tests).  An optional
initializer ships shared state (e.g. a large series matrix) once per
worker instead of once per task.
"""

import os
from concurrent.futures import ProcessPoolExecutor

__all__ = ["resolve_jobs", "keyed_map"]


def resolve_jobs(jobs=None) -> int:
    if jobs is None:
        return max(1, os.cpu_count() or 1)
    jobs = int(jobs)
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    return jobs


def keyed_map(func, keys, jobs=None, initializer=None, initargs=()) -> dict:
    """{key: func(key)} for every key, computed with up to ``jobs`` processes."""
    keys = list(keys)
    jobs = min(resolve_jobs(jobs), max(1, len(keys)))
    if jobs == 1:
        if initializer is not None:
            initializer(*initargs)
        return {k: func(k) for k in keys}
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=initializer, initargs=initargs
    ) as pool:
        results = pool.map(func, keys)
        return dict(zip(keys, results))
