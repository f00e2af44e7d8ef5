import logging
import math
from functools import partial
from typing import List, NamedTuple, Optional, Sequence

from weak_reality.channels import build_channel
from weak_reality.configuration import NoiseSpec
from weak_reality.errors import OutOfRange
from weak_reality.executors.default import DefaultExecutor
from weak_reality.interfaces.executor import GridExecutor
from weak_reality.measures.entropy import shannon_binary_entropy, von_neumann_entropy
from weak_reality.measures.ledger import (
    InformationChange,
    InformationLedger,
    delta_information,
    information_ledger,
)
from weak_reality.measures.maps import monitoring_map
from weak_reality.measures.reality import RealityReport, reality_report
from weak_reality.qcore.states import (
    KET_PLUS,
    PAULI_Z_OBSERVABLE,
    DensityMatrix,
    Subsystem,
    apply_unitary,
    partial_trace,
    product_state,
)
from weak_reality.weakmeas.meter import (
    MeterSpec,
    check_theta,
    cphase_unitary,
    meter_state,
)

_log: logging.Logger = logging.getLogger(__name__)


class ExperimentResult(NamedTuple):
    epsilon: float
    s_m: float
    rho_sa_out: DensityMatrix
    # Reality change of Z on the reduced system state
    report: RealityReport
    ledger_before: InformationLedger
    ledger_after: InformationLedger
    information_change: InformationChange
    spec: MeterSpec
    noise: NoiseSpec

    @property
    def delta_information_estimate(self) -> float:
        """
        S(M(rho)) - S(rho'_SA): the information change read off the joint
        output state.
        """
        return -self.report.delta_information

    @property
    def complementarity_gap(self) -> float:
        """
        delta_context + delta_system. Zero for unitary coupling, negative
        once information leaks out of system and meter.
        """
        return self.information_change.gap


def closed_form_delta_reality(theta: float, mixing_p: float = 1.0) -> float:
    """
    Noiseless reality change of Z for the system |+>: the meter's <Z>,
    (2p - 1) cos(2 theta), scales the coherence of the system.
    """
    meter_z = (2.0 * mixing_p - 1.0) * math.cos(2.0 * theta)
    return shannon_binary_entropy(min(1.0, max(0.0, (1.0 + meter_z) / 2.0)))


def run_experiment(
    system: Optional[DensityMatrix],
    spec: MeterSpec,
    noise: NoiseSpec = NoiseSpec(),
) -> ExperimentResult:
    """
    Couples the system (|+> when None) to the meter through the
    controlled-phase gate, applies the configured loss and reports the
    reality change of Z with the information ledger before and after.
    """
    if system is None:
        system = KET_PLUS.density()
    spec.validate()
    epsilon = spec.epsilon

    joint_in = product_state(system, meter_state(spec))
    joint_out = build_channel(noise, epsilon).apply(
        apply_unitary(joint_in, cphase_unitary())
    )

    monitored = monitoring_map(system, PAULI_Z_OBSERVABLE, epsilon)
    report = reality_report(
        PAULI_Z_OBSERVABLE,
        system,
        partial_trace(joint_out, Subsystem.SYSTEM),
        epsilon,
        delta_information=von_neumann_entropy(joint_out)
        - von_neumann_entropy(monitored),
    )
    ledger_before = information_ledger(joint_in)
    ledger_after = information_ledger(joint_out)
    return ExperimentResult(
        epsilon=epsilon,
        s_m=spec.s_m,
        rho_sa_out=joint_out,
        report=report,
        ledger_before=ledger_before,
        ledger_after=ledger_after,
        information_change=delta_information(ledger_before, ledger_after),
        spec=spec,
        noise=noise,
    )


def _check_increasing(theta_grid: Sequence[float]) -> None:
    for theta in theta_grid:
        check_theta(theta)
    for lower, upper in zip(theta_grid, theta_grid[1:]):
        if upper <= lower:
            raise OutOfRange(
                "theta_grid", upper, "Angle grid must be strictly increasing"
            )


def _at_spec(
    system: Optional[DensityMatrix], noise: NoiseSpec, spec: MeterSpec
) -> ExperimentResult:
    return run_experiment(system, spec, noise)


def sweep_strength(
    system: Optional[DensityMatrix],
    theta_grid: Sequence[float],
    noise: NoiseSpec = NoiseSpec(),
    mixing_p: float = 1.0,
    executor: Optional[GridExecutor] = None,
) -> List[ExperimentResult]:
    """
    One experiment per meter angle (radians), in grid order.
    """
    _check_increasing(theta_grid)
    executor = executor or DefaultExecutor()
    specs = [MeterSpec(theta, mixing_p) for theta in theta_grid]
    _log.info(f"Strength sweep over {len(specs)} angles, noise={noise.kind.value}")
    results = executor.map(partial(_at_spec, system, noise), specs)
    _log.info("Strength sweep done")
    return results


def sweep_meter_mixing(
    system: Optional[DensityMatrix],
    theta: float,
    p_grid: Sequence[float],
    noise: NoiseSpec = NoiseSpec(),
    executor: Optional[GridExecutor] = None,
) -> List[ExperimentResult]:
    """
    One experiment per meter weight p at a fixed angle, in grid order.
    Each result carries its meter entropy s_m = H(p).
    """
    executor = executor or DefaultExecutor()
    specs = [MeterSpec(theta, p) for p in p_grid]
    for spec in specs:
        spec.validate()
    _log.info(f"Mixing sweep over {len(specs)} weights at theta={theta!r}")
    results = executor.map(partial(_at_spec, system, noise), specs)
    _log.info("Mixing sweep done")
    return results
