import math
from typing import List, Sequence

import numpy as np

from weak_reality.base.base_channel import BaseChannel
from weak_reality.configuration import NoiseKind, NoiseSpec
from weak_reality.errors import NotNormalized, OutOfRange
from weak_reality.qcore.linalg import ComplexMatrix
from weak_reality.qcore.states import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, DensityMatrix


class IdentityChannel(BaseChannel):
    def apply(self, rho_sa: DensityMatrix) -> DensityMatrix:
        return rho_sa

    @property
    def kappa(self) -> float:
        return 0.0


class SystemKrausChannel(BaseChannel):
    """
    Channel acting on the system qubit only, given by single-qubit Kraus
    operators K_i and lifted to the joint state as K_i (x) I.
    """

    TRACE_PRESERVING_TOL = 1e-12

    def __init__(self, kraus: Sequence[ComplexMatrix], kappa: float) -> None:
        if not 0.0 <= kappa <= 1.0:
            raise OutOfRange("kappa", kappa, "Channel strength must lie in [0, 1]")
        completeness = sum(k.conj().T @ k for k in kraus)
        if np.max(np.abs(completeness - np.eye(2))) > self.TRACE_PRESERVING_TOL:
            raise NotNormalized("kraus", "Kraus operators are not trace preserving")
        self._kappa = kappa
        self._joint_kraus: List[ComplexMatrix] = [np.kron(k, PAULI_I) for k in kraus]

    @property
    def kappa(self) -> float:
        return self._kappa

    def apply(self, rho_sa: DensityMatrix) -> DensityMatrix:
        return DensityMatrix(
            sum(k @ rho_sa.mat @ k.conj().T for k in self._joint_kraus)
        )


class SystemDephasingChannel(SystemKrausChannel):
    def __init__(self, kappa: float) -> None:
        super().__init__(
            [
                math.sqrt(max(0.0, 1.0 - kappa / 2.0)) * PAULI_I,
                math.sqrt(max(0.0, kappa / 2.0)) * PAULI_Z,
            ],
            kappa,
        )


class SystemDepolarizingChannel(SystemKrausChannel):
    def __init__(self, kappa: float) -> None:
        weight = math.sqrt(max(0.0, kappa / 4.0))
        super().__init__(
            [
                math.sqrt(max(0.0, 1.0 - 3.0 * kappa / 4.0)) * PAULI_I,
                weight * PAULI_X,
                weight * PAULI_Y,
                weight * PAULI_Z,
            ],
            kappa,
        )


def build_channel(noise: NoiseSpec, epsilon: float) -> BaseChannel:
    noise.validate()
    kappa = noise.kappa(epsilon)
    if noise.kind is NoiseKind.NONE or kappa == 0.0:
        return IdentityChannel()
    if noise.kind is NoiseKind.SYSTEM_DEPHASING:
        return SystemDephasingChannel(kappa)
    return SystemDepolarizingChannel(kappa)
