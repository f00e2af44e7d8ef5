import logging
from typing import NamedTuple, Optional

from weak_reality.measures.entropy import von_neumann_entropy
from weak_reality.measures.maps import check_strength, dephasing_map, monitoring_map
from weak_reality.qcore.states import DensityMatrix, Observable
from weak_reality.settings import NEGATIVE_ZERO_TOL

_log: logging.Logger = logging.getLogger(__name__)

# Agreement required between the two ways of computing a reality change.
_CROSS_CHECK_TOL = 1e-10


class RealityReport(NamedTuple):
    irreality_before: float
    irreality_after: float
    # S(M(rho)) - S(rho), i.e. how much more real the observable became
    delta_reality: float
    # Information change paired with delta_reality, signed so that the two
    # sum to zero for ideal monitoring
    delta_information: float
    epsilon: float
    # Lower bound eps * irreality_before on delta_reality
    bound_rhs: float

    @property
    def bound_satisfied(self) -> bool:
        return self.delta_reality >= self.bound_rhs - NEGATIVE_ZERO_TOL


def clamp_negative_zero(value: float, name: str = "value") -> float:
    if -NEGATIVE_ZERO_TOL <= value < 0.0:
        return 0.0
    if value < 0.0:
        _log.warning(f"{name} is negative beyond rounding: {value:.3e}")
    return value


def irreality(obs: Observable, rho: DensityMatrix) -> float:
    """
    Degree of irreality of O in rho: S(Phi_O(rho)) - S(rho).

    Zero exactly when measuring O leaves rho untouched.
    """
    value = von_neumann_entropy(dephasing_map(rho, obs)) - von_neumann_entropy(rho)
    return clamp_negative_zero(value, "irreality")


def reality_report(
    obs: Observable,
    before: DensityMatrix,
    after: DensityMatrix,
    epsilon: float,
    delta_information: Optional[float] = None,
) -> RealityReport:
    """
    Reality change of O between two unconditional states of the system.

    delta_information defaults to -delta_reality, the ideal duality
    between reality gained and information extracted.
    """
    check_strength(epsilon)
    irreality_before = irreality(obs, before)
    change = clamp_negative_zero(
        von_neumann_entropy(after) - von_neumann_entropy(before), "delta_reality"
    )
    return RealityReport(
        irreality_before=irreality_before,
        irreality_after=irreality(obs, after),
        delta_reality=change,
        delta_information=-change if delta_information is None else delta_information,
        epsilon=epsilon,
        bound_rhs=epsilon * irreality_before,
    )


def delta_reality(obs: Observable, rho: DensityMatrix, epsilon: float) -> RealityReport:
    check_strength(epsilon)
    report = reality_report(obs, rho, monitoring_map(rho, obs, epsilon), epsilon)
    # Both forms agree because monitoring commutes with dephasing.
    irreality_drop = report.irreality_before - report.irreality_after
    if abs(irreality_drop - report.delta_reality) > _CROSS_CHECK_TOL:
        _log.warning(
            "Reality change forms disagree: irreality drop "
            f"{irreality_drop!r} vs entropy gain {report.delta_reality!r}"
        )
    return report
