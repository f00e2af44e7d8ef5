import logging
from functools import partial
from typing import NamedTuple, Optional, Tuple

import numpy as np

from weak_reality.configuration import ReconstructionMethod
from weak_reality.errors import OutOfRange
from weak_reality.executors.default import DefaultExecutor
from weak_reality.interfaces.executor import GridExecutor
from weak_reality.measures.entropy import von_neumann_entropy
from weak_reality.measures.ledger import InformationLedger, information_ledger
from weak_reality.measures.maps import check_strength, monitoring_map
from weak_reality.measures.reality import RealityReport, clamp_negative_zero, irreality
from weak_reality.qcore.states import (
    KET_PLUS,
    PAULI_Z_OBSERVABLE,
    DensityMatrix,
    Observable,
    Subsystem,
    partial_trace,
)
from weak_reality.tomography.counts import simulate_counts
from weak_reality.tomography.reconstruction import ReconstructionResult, reconstruct

_log: logging.Logger = logging.getLogger(__name__)


class QuantityEstimate(NamedTuple):
    report: RealityReport
    ledger: InformationLedger


def estimate_quantities(
    rec: ReconstructionResult,
    epsilon: float,
    system: Optional[DensityMatrix] = None,
    obs: Observable = PAULI_Z_OBSERVABLE,
) -> QuantityEstimate:
    """
    Reality and information quantities read off a reconstructed joint
    state, for a system prepared in `system` (|+> when None).

    The initial system entropy is taken to be zero, so the reality change
    is the plain entropy of the reconstructed system marginal. Entropies
    of reconstructed states are biased upwards at finite shots; no
    correction is applied.
    """
    check_strength(epsilon)
    if system is None:
        system = KET_PLUS.density()
    rho_hat = rec.rho_hat
    reduced = partial_trace(rho_hat, Subsystem.SYSTEM)
    irreality_before = irreality(obs, system)
    information_estimate = von_neumann_entropy(
        monitoring_map(system, obs, epsilon)
    ) - von_neumann_entropy(rho_hat)
    report = RealityReport(
        irreality_before=irreality_before,
        irreality_after=irreality(obs, reduced),
        delta_reality=clamp_negative_zero(
            von_neumann_entropy(reduced), "delta_reality"
        ),
        delta_information=-information_estimate,
        epsilon=epsilon,
        bound_rhs=epsilon * irreality_before,
    )
    return QuantityEstimate(report, information_ledger(rho_hat))


class ResampledEstimate(NamedTuple):
    delta_reality_mean: float
    # Sample standard deviation over the repeats, 0 for a single repeat
    delta_reality_std: float
    estimates: Tuple[QuantityEstimate, ...]
    # Most MLE iterations used by any repeat, 0 for the other methods
    mle_iterations: int = 0
    # S(M(rho)) - S(rho_hat) over the same repeats, std as above
    delta_information_mean: float = 0.0
    delta_information_std: float = 0.0


def _sample_std(values: np.ndarray) -> float:
    return float(values.std(ddof=1)) if len(values) > 1 else 0.0


def _estimate_stream(
    rho: DensityMatrix,
    shots: int,
    seed: int,
    method: ReconstructionMethod,
    epsilon: float,
    system: Optional[DensityMatrix],
    stream: int,
) -> Tuple[QuantityEstimate, int]:
    counts = simulate_counts(rho, shots, seed, stream=stream)
    rec = reconstruct(counts, method)
    return estimate_quantities(rec, epsilon, system), rec.iterations


def estimate_with_resampling(
    rho: DensityMatrix,
    shots: int,
    seed: int,
    repeats: int,
    method: ReconstructionMethod,
    epsilon: float,
    system: Optional[DensityMatrix] = None,
    executor: Optional[GridExecutor] = None,
) -> ResampledEstimate:
    """
    Repeats the simulated tomography of rho on `repeats` independent
    streams of one seed and summarizes the reality and information change
    estimates.
    """
    if repeats < 1:
        raise OutOfRange("repeats", repeats, "repeats must be >= 1")
    executor = executor or DefaultExecutor()
    runs = executor.map(
        partial(_estimate_stream, rho, shots, seed, method, epsilon, system),
        range(repeats),
    )
    estimates = tuple(estimate for estimate, _ in runs)
    values = np.array([e.report.delta_reality for e in estimates])
    information = np.array([-e.report.delta_information for e in estimates])
    return ResampledEstimate(
        delta_reality_mean=float(values.mean()),
        delta_reality_std=_sample_std(values),
        estimates=estimates,
        mle_iterations=max(iterations for _, iterations in runs),
        delta_information_mean=float(information.mean()),
        delta_information_std=_sample_std(information),
    )
