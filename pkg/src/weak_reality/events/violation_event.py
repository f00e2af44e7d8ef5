from typing import TYPE_CHECKING, Callable, List

if TYPE_CHECKING:  # pragma: no cover
    from weak_reality.verify import PropertyOutcome

ViolationHandler = Callable[["PropertyOutcome"], None]


class PropertyViolationEvent(object):
    """
    Fired by the verifier for every property that does not pass, including
    violations expected from the configured noise. Subscribe with += and
    unsubscribe with -=.
    """

    def __init__(self) -> None:
        self._eventhandlers: List[ViolationHandler] = []

    def __iadd__(self, handler: ViolationHandler) -> "PropertyViolationEvent":
        self._eventhandlers.append(handler)
        return self

    def __isub__(self, handler: ViolationHandler) -> "PropertyViolationEvent":
        self._eventhandlers.remove(handler)
        return self

    def __len__(self) -> int:
        return len(self._eventhandlers)

    def __call__(self, outcome: "PropertyOutcome") -> None:
        for eventhandler in self._eventhandlers:
            eventhandler(outcome)
