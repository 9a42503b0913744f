"""Deterministic process-parallel map over contiguous index chunks."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def chunk_ranges(n_items: int, n_chunks: int) -> list[range]:
    n_chunks = max(1, min(n_chunks, n_items)) if n_items else 1
    size, extra = divmod(n_items, n_chunks)
    out, start = [], 0
    for c in range(n_chunks):
        stop = start + size + (1 if c < extra else 0)
        out.append(range(start, stop))
        start = stop
    return out


def resolve_workers(workers: int | None) -> int:
    if workers is None or workers <= 0:
        return os.cpu_count() or 1
    return workers


def map_chunks(fn, n_items: int, workers: int | None = 1, args: tuple = ()) -> list:
    """``[fn(*args, range_c) for each chunk c]`` in chunk order.

    ``fn`` must be a module-level function so worker processes can import it;
    workers rebuild any field tables they need from ``args``.  The result list is
    ordered by chunk, so callers that concatenate or add results get output
    independent of the number of workers and of scheduling.
    """
    workers = resolve_workers(workers)
    ranges = chunk_ranges(n_items, workers)
    if workers == 1 or len(ranges) == 1:
        return [fn(*args, r) for r in ranges]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args, r) for r in ranges]
        return [f.result() for f in futures]
