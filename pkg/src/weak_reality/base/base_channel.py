from abc import ABC, abstractmethod

from weak_reality.qcore.states import DensityMatrix


class BaseChannel(ABC):
    """
    Completely positive, trace preserving map on the joint
    |system, ancilla> state, applied after the coupling unitary.
    """

    @abstractmethod
    def apply(self, rho_sa: DensityMatrix) -> DensityMatrix: ...

    @property
    @abstractmethod
    def kappa(self) -> float: ...
