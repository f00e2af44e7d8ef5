from typing import Any, Optional


class WeakRealityError(Exception):
    pass


class InvalidOperatorError(WeakRealityError, ValueError):
    def __init__(self, operator: str, message: str) -> None:
        self.operator = operator
        super().__init__(message)


class NotHermitian(InvalidOperatorError): ...


class NotUnitary(InvalidOperatorError): ...


class NotPositive(InvalidOperatorError): ...


class NotNormalized(InvalidOperatorError): ...


class DimensionError(WeakRealityError, ValueError):
    pass


class InvalidDimension(DimensionError): ...


class DimensionMismatch(DimensionError): ...


class DimensionTooLarge(DimensionError): ...


class OutOfRange(WeakRealityError, ValueError):
    def __init__(self, name: str, value: float, message: Optional[str] = None) -> None:
        self.name = name
        self.value = value
        super().__init__(message or f"{name}={value!r} is out of range")


class InvalidOutcome(WeakRealityError, IndexError):
    pass


class IncompleteData(WeakRealityError):
    pass


class NonConvergence(WeakRealityError):
    def __init__(self, message: str, last_iterate: Any, iterations: int) -> None:
        self.last_iterate = last_iterate
        self.iterations = iterations
        super().__init__(message)
