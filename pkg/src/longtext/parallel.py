"""Bounded, order-preserving parallel mapping."""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int) -> Iterator[R]:
    """Map ``fn`` over ``items`` with up to ``jobs`` workers.

    Results are yielded in input order with at most ``2 * jobs`` items in
    flight, so memory stays bounded on unbounded streams. Exceptions
    propagate at the position of the failing item.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if jobs == 1:
        yield from map(fn, items)
        return

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        pending = deque()
        iterator = iter(items)
        try:
            for item in iterator:
                pending.append(executor.submit(fn, item))
                if len(pending) >= 2 * jobs:
                    yield pending.popleft().result()
            while pending:
                yield pending.popleft().result()
        finally:
            for future in pending:
                future.cancel()
