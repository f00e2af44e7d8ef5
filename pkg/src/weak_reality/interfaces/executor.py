from typing import Callable, List, Protocol, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


class GridExecutor(Protocol):
    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """
        Evaluates fn on every item

        Results are returned in the order of items, whatever order
        the evaluations complete in.
        """
        ...  # pragma: no cover
