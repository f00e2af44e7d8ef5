"""
Measurement maps acting on a state through an observable's eigenbasis.

  * dephasing (projective, outcomes not sorted):  Phi_O(rho) = sum_k p_k |k><k|
  * weak collapse on outcome k:  C_k(rho) = (1 - eps) rho + eps |k><k|
  * monitoring (weak, outcomes not sorted):  M_O(rho) = sum_k p_k C_k(rho)
"""

import numpy as np

from weak_reality.errors import DimensionMismatch, InvalidOutcome, OutOfRange
from weak_reality.qcore.linalg import ComplexMatrix
from weak_reality.qcore.states import DensityMatrix, Observable


def check_strength(epsilon: float) -> None:
    if not 0.0 <= epsilon <= 1.0:
        raise OutOfRange(
            "epsilon", epsilon, f"Measurement strength {epsilon!r} must lie in [0, 1]"
        )


def _check_dims(rho: DensityMatrix, obs: Observable) -> None:
    if rho.dim != obs.dim:
        raise DimensionMismatch(
            f"State of dim {rho.dim} measured with an observable of dim {obs.dim}"
        )


def outcome_probabilities(rho: DensityMatrix, obs: Observable) -> np.ndarray:
    _check_dims(rho, obs)
    return np.array(
        [float(np.real(np.trace(proj @ rho.mat))) for proj in obs.projectors]
    )


def dephasing_map(rho: DensityMatrix, obs: Observable) -> DensityMatrix:
    _check_dims(rho, obs)
    return DensityMatrix(sum(proj @ rho.mat @ proj for proj in obs.projectors))


def _collapse(rho: DensityMatrix, proj: ComplexMatrix, epsilon: float) -> ComplexMatrix:
    return (1.0 - epsilon) * rho.mat + epsilon * proj


def weak_collapse(
    rho: DensityMatrix, obs: Observable, k: int, epsilon: float
) -> DensityMatrix:
    check_strength(epsilon)
    _check_dims(rho, obs)
    if not 0 <= k < obs.dim:
        raise InvalidOutcome(f"Outcome {k} is not in [0, {obs.dim})")
    return DensityMatrix(_collapse(rho, obs.projectors[k], epsilon))


def monitoring_map(
    rho: DensityMatrix, obs: Observable, epsilon: float
) -> DensityMatrix:
    """
    Outcome-averaged weak measurement, built literally as sum_k p_k C_k(rho).

    Since the p_k sum to one this equals (1 - eps) rho + eps Phi_O(rho).
    """
    check_strength(epsilon)
    probabilities = outcome_probabilities(rho, obs)
    return DensityMatrix(
        sum(
            p * _collapse(rho, proj, epsilon)
            for p, proj in zip(probabilities, obs.projectors)
        )
    )
