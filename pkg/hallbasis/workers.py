from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None) -> List[R]:
    """
    Order-preserving map over a thread pool. Falls back to a plain loop for a
    single worker or a single item.
    """
    items = list(items)
    if not max_workers or max_workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix="hallbasis") as pool:
        return list(pool.map(fn, items))


def derive_seed(seed: int, *stream: int) -> int:
    """Independent 64-bit seed for one task of a seeded run."""
    entropy = [seed & 0xFFFF_FFFF_FFFF_FFFF] + [s & 0xFFFF_FFFF_FFFF_FFFF for s in stream]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])
