"""
Meter (ancilla) preparation, strength calibration and readout for the
controlled-phase weak measurement of Z.

The meter starts in |psi(theta)> = cos(theta)|0> + sin(theta)|1>, or in a
mixture of it with the orthogonal |psi(theta + pi/2)>. After the
coupling the system coherence is scaled by the meter's <Z>, which for
a pure meter is cos(2 theta) = 1 - epsilon.
"""

import math
from typing import List, NamedTuple, Optional

import numpy as np

from weak_reality.errors import InvalidDimension, OutOfRange
from weak_reality.measures.entropy import shannon_binary_entropy
from weak_reality.qcore.linalg import ComplexMatrix
from weak_reality.qcore.states import (
    PAULI_I,
    DensityMatrix,
    Observable,
    PauliBasis,
    PureState,
    Subsystem,
    mixture,
    partial_trace_matrix,
)

THETA_MAX = math.pi / 4

# Slack on the angle range for values converted from degrees.
_ANGLE_SLACK = 1e-12


def strength_from_theta(theta: float) -> float:
    return 1.0 - math.cos(2.0 * theta)


def theta_from_strength(epsilon: float) -> float:
    if not 0.0 <= epsilon <= 1.0:
        raise OutOfRange("epsilon", epsilon, "Measurement strength must lie in [0, 1]")
    return 0.5 * math.acos(1.0 - epsilon)


def check_theta(theta: float) -> None:
    if not -_ANGLE_SLACK <= theta <= THETA_MAX + _ANGLE_SLACK:
        raise OutOfRange("theta", theta, f"Meter angle {theta!r} must lie in [0, pi/4]")


class MeterSpec(NamedTuple):
    """
    Meter preparation: angle theta (radians) and the weight mixing_p of
    |psi(theta)> against |psi(theta + pi/2)>. mixing_p = 1 is the pure meter.
    """

    theta: float
    mixing_p: float = 1.0

    @classmethod
    def from_degrees(cls, theta_deg: float, mixing_p: float = 1.0) -> "MeterSpec":
        return cls(math.radians(theta_deg), mixing_p)

    @property
    def theta_deg(self) -> float:
        return math.degrees(self.theta)

    @property
    def epsilon(self) -> float:
        return strength_from_theta(self.theta)

    @property
    def s_m(self) -> float:
        return shannon_binary_entropy(self.mixing_p)

    def validate(self) -> None:
        check_theta(self.theta)
        if not 0.0 <= self.mixing_p <= 1.0:
            raise OutOfRange(
                "mixing_p", self.mixing_p, "Meter weight must lie in [0, 1]"
            )


def meter_state(spec: MeterSpec) -> DensityMatrix:
    spec.validate()
    aligned = PureState.from_angle(spec.theta).density()
    orthogonal = PureState.from_angle(spec.theta + math.pi / 2).density()
    return mixture([aligned, orthogonal], [spec.mixing_p, 1.0 - spec.mixing_p])


_CPHASE = np.diag([1.0, 1.0, 1.0, -1.0]).astype(np.complex128)
_CPHASE.setflags(write=False)


def cphase_unitary() -> ComplexMatrix:
    """
    U = |0><0| (x) I + |1><1| (x) Z, in the |system, ancilla> basis.
    """
    return _CPHASE


class ReadoutOutcome(NamedTuple):
    probability: float
    # None when the outcome cannot occur
    system_state: Optional[DensityMatrix]


def readout_ancilla(
    rho_sa: DensityMatrix,
    basis: PauliBasis = PauliBasis.X,
) -> List[ReadoutOutcome]:
    """
    Projective readout of the ancilla in the eigenbasis of a Pauli
    operator, ordered (+1, -1), with the conditional system states.
    """
    if rho_sa.dim != 4:
        raise InvalidDimension(f"Readout needs a two-qubit state, got dim {rho_sa.dim}")
    outcomes = []
    for proj in Observable.pauli(basis).projectors:
        lifted = np.kron(PAULI_I, proj)
        unnormalized = lifted @ rho_sa.mat @ lifted
        probability = float(np.real(np.trace(unnormalized)))
        state = None
        if probability > 1e-15:
            state = DensityMatrix(
                partial_trace_matrix(unnormalized, Subsystem.SYSTEM) / probability
            )
        outcomes.append(ReadoutOutcome(max(probability, 0.0), state))
    return outcomes
