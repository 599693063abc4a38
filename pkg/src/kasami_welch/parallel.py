"""Chunked map/reduce of exact integer histograms over a process pool."""

import logging
import multiprocessing as mp
import os
from collections import Counter
from collections.abc import Iterable, Sequence
from typing import Callable, TypeVar

logger = logging.getLogger(__name__)

Chunk = TypeVar("Chunk")


def default_threads() -> int:
    return max(1, os.cpu_count() or 1)


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, total) into at most `parts` ordered half-open ranges."""
    if total <= 0:
        return []
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def merge_histograms(partials: Iterable[Counter]) -> Counter:
    merged: Counter = Counter()
    for partial in partials:
        merged.update(partial)
    return merged


def map_reduce_histograms(
    worker: Callable[[Chunk], Counter], chunks: Sequence[Chunk], threads: int = 1
) -> Counter:
    """Run `worker` over every chunk and merge the partial histograms.

    With threads <= 1 (or a single chunk) everything runs in-process; otherwise
    a multiprocessing pool of `threads` workers is used. Workers must be
    picklable (module-level functions, optionally bound with functools.partial).
    Partials are merged in chunk order, so counts never depend on `threads`.

    Args:
        worker: chunk -> Counter of exact integer keys
        chunks: Work items
        threads: Worker process count

    Returns:
        Merged Counter
    """
    if threads <= 1 or len(chunks) <= 1:
        return merge_histograms(worker(chunk) for chunk in chunks)

    processes = min(threads, len(chunks))
    logger.debug("Dispatching %d chunks to %d processes", len(chunks), processes)
    with mp.Pool(processes) as pool:
        partials = pool.map(worker, chunks)
    return merge_histograms(partials)
