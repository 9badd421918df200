from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(function: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Map on a thread pool, returning results in input order whatever the worker count."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [function(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))


def chunk_sizes(total: int, chunk: int) -> list[int]:
    """Split `total` replications into fixed-size chunks (the last one may be shorter)."""
    if total < 1:
        raise ValueError(f"replication count must be positive, got {total}")
    full, rest = divmod(total, chunk)
    return [chunk] * full + ([rest] if rest else [])


def spawn_generators(seed: int, count: int) -> list[np.random.Generator]:
    """Independent generators per chunk, derived from one master seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]
