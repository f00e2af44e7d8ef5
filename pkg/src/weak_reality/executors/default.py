import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

_log: logging.Logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class DefaultExecutor:
    """
    Evaluates independent grid points, serially or on a thread pool.

    Every grid point is a pure computation, so the result list is the
    same for any number of workers.
    """

    def __init__(self, max_workers: int = 1) -> None:
        if max_workers < 1:
            raise ValueError("max_workers must be >= 1")
        self._max_workers = max_workers

    @property
    def max_workers(self) -> int:
        return self._max_workers

    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        if self._max_workers == 1 or len(items) < 2:
            return [fn(item) for item in items]
        _log.debug(f"Evaluating {len(items)} points on {self._max_workers} threads")
        with ThreadPoolExecutor(max_workers=self._max_workers) as pool:
            return list(pool.map(fn, items))
