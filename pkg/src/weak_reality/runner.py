import csv
import logging
import math
from functools import partial
from typing import List, NamedTuple, Optional, Sequence, TextIO, Union

import numpy as np

from weak_reality.configuration import Command, RunConfig
from weak_reality.errors import OutOfRange
from weak_reality.executors.default import DefaultExecutor
from weak_reality.interfaces.executor import GridExecutor
from weak_reality.measures.entropy import Units, to_units
from weak_reality.metrics.base import SWEEP_COUNTERS, SWEEP_GAUGES, BaseMetricsCollector
from weak_reality.tomography.counts import CountTable, simulate_counts
from weak_reality.tomography.estimates import (
    QuantityEstimate,
    ResampledEstimate,
    estimate_quantities,
    estimate_with_resampling,
)
from weak_reality.tomography.reconstruction import ReconstructionResult, reconstruct
from weak_reality.weakmeas.experiment import (
    ExperimentResult,
    run_experiment,
    sweep_meter_mixing,
    sweep_strength,
)
from weak_reality.weakmeas.meter import MeterSpec

_log: logging.Logger = logging.getLogger(__name__)

STRENGTH_COLUMNS = [
    "theta_deg",
    "epsilon",
    "dR_exact",
    "dR_bound",
    "dI_context",
    "dI_system",
    "dR_tomo",
    "dR_tomo_err",
    # Reconstructed information change, trailing the reality columns
    "dI_tomo",
    "dI_tomo_err",
]
MIXING_COLUMNS = ["p", "s_m", "epsilon", "dR_exact", "dR_tomo", "dR_tomo_err"]


class StrengthRow(NamedTuple):
    theta_deg: float
    epsilon: float
    dR_exact: float
    dR_bound: float
    dI_context: float
    dI_system: float
    dR_tomo: Optional[float] = None
    dR_tomo_err: Optional[float] = None
    dI_tomo: Optional[float] = None
    dI_tomo_err: Optional[float] = None


class MixingRow(NamedTuple):
    p: float
    s_m: float
    epsilon: float
    dR_exact: float
    dR_tomo: Optional[float] = None
    dR_tomo_err: Optional[float] = None


class TomoRunSummary(NamedTuple):
    counts: CountTable
    reconstruction: ReconstructionResult
    estimate: QuantityEstimate
    experiment: ExperimentResult

    def render(self, units: Units = Units.NATS) -> str:
        report = self.estimate.report
        exact = self.experiment.report
        lines = [
            f"method={self.reconstruction.method.value}",
            f"iterations={self.reconstruction.iterations}",
            f"converged={self.reconstruction.converged}",
            f"epsilon={self.experiment.epsilon!r}",
            f"dR_tomo={to_units(report.delta_reality, units)!r}",
            f"dR_exact={to_units(exact.delta_reality, units)!r}",
            f"dI_estimate={to_units(-report.delta_information, units)!r}",
            f"fidelity={self.reconstruction.fidelity_to_truth!r}",
        ]
        return "\n".join(lines)


def point_seed(seed: int, index: int) -> int:
    """
    Seed of the tomography data simulated at one grid point.
    """
    return int(np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(1)[0])


class SweepRunner:
    """
    Builds the rows of the sweep outputs: exact values for every grid
    point and, when shots are configured, seed-resampled tomography
    estimates next to them.
    """

    def __init__(
        self,
        executor: Optional[GridExecutor] = None,
        metrics_collector: Optional[BaseMetricsCollector] = None,
    ) -> None:
        self._executor: GridExecutor = executor or DefaultExecutor()
        if metrics_collector:
            metrics_collector.init_metrics(metrics=SWEEP_COUNTERS, gauges=SWEEP_GAUGES)
        self._metrics = metrics_collector

    def _tomography(
        self, cfg: RunConfig, results: Sequence[ExperimentResult]
    ) -> List[Optional[ResampledEstimate]]:
        if cfg.shots == 0:
            return [None] * len(results)

        def estimate(index: int) -> ResampledEstimate:
            result = results[index]
            return estimate_with_resampling(
                result.rho_sa_out,
                cfg.shots,
                point_seed(cfg.seed, index),
                cfg.repeats,
                cfg.method,
                result.epsilon,
            )

        estimates = self._executor.map(estimate, range(len(results)))
        if self._metrics:
            self._metrics.metric_inc("tomography_runs", cfg.repeats * len(results))
            self._metrics.gauge_set(
                "last_mle_iterations", estimates[-1].mle_iterations
            )
        return list(estimates)

    def _count_points(self, cfg: RunConfig, points: int) -> None:
        if self._metrics:
            self._metrics.metric_inc(
                "points", points, labels={"command": cfg.command.value}
            )

    def strength_rows(self, cfg: RunConfig) -> List[StrengthRow]:
        cfg.validate()
        thetas = cfg.theta_grid.values()
        results = sweep_strength(
            None,
            cfg.theta_grid.radians(),
            cfg.noise,
            mixing_p=cfg.mixing_p,
            executor=self._executor,
        )
        self._count_points(cfg, len(results))
        u = partial(_convert, cfg.units)
        return [
            StrengthRow(
                theta_deg=theta,
                epsilon=result.epsilon,
                dR_exact=u(result.report.delta_reality),
                dR_bound=u(result.report.bound_rhs),
                dI_context=u(result.information_change.delta_context),
                dI_system=u(result.information_change.delta_system),
                dR_tomo=u(tomo.delta_reality_mean) if tomo else None,
                dR_tomo_err=u(tomo.delta_reality_std) if tomo else None,
                dI_tomo=u(tomo.delta_information_mean) if tomo else None,
                dI_tomo_err=u(tomo.delta_information_std) if tomo else None,
            )
            for theta, result, tomo in zip(
                thetas, results, self._tomography(cfg, results)
            )
        ]

    def mixing_rows(self, cfg: RunConfig) -> List[MixingRow]:
        cfg.validate()
        p_grid = cfg.p_grid.values()
        results = sweep_meter_mixing(
            None,
            math.radians(cfg.theta_fixed_deg),
            p_grid,
            cfg.noise,
            executor=self._executor,
        )
        self._count_points(cfg, len(results))
        u = partial(_convert, cfg.units)
        return [
            MixingRow(
                p=p,
                s_m=u(result.s_m),
                epsilon=result.epsilon,
                dR_exact=u(result.report.delta_reality),
                dR_tomo=u(tomo.delta_reality_mean) if tomo else None,
                dR_tomo_err=u(tomo.delta_reality_std) if tomo else None,
            )
            for p, result, tomo in zip(p_grid, results, self._tomography(cfg, results))
        ]

    def tomo_run(self, cfg: RunConfig) -> TomoRunSummary:
        """
        One simulated tomography dataset of the circuit output at the
        fixed angle and meter weight.
        """
        cfg.validate()
        if cfg.shots < 1:
            raise OutOfRange("shots", cfg.shots, "tomo-run needs shots >= 1")
        experiment = run_experiment(
            None, MeterSpec.from_degrees(cfg.theta_fixed_deg, cfg.mixing_p), cfg.noise
        )
        counts = simulate_counts(experiment.rho_sa_out, cfg.shots, cfg.seed)
        rec = reconstruct(counts, cfg.method, truth=experiment.rho_sa_out)
        if self._metrics:
            self._metrics.metric_inc("tomography_runs")
            self._metrics.gauge_set("last_mle_iterations", rec.iterations)
        self._count_points(cfg, 1)
        return TomoRunSummary(
            counts=counts,
            reconstruction=rec,
            estimate=estimate_quantities(rec, experiment.epsilon),
            experiment=experiment,
        )

    def rows(self, cfg: RunConfig) -> Union[List[StrengthRow], List[MixingRow]]:
        if cfg.command is Command.SWEEP_STRENGTH:
            return self.strength_rows(cfg)
        if cfg.command is Command.SWEEP_MIXING:
            return self.mixing_rows(cfg)
        raise ValueError(f"{cfg.command.value} does not produce sweep rows")


def _convert(units: Units, value: float) -> float:
    return to_units(value, units)


def _format(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def write_rows(
    stream: TextIO,
    cfg: RunConfig,
    rows: Union[Sequence[StrengthRow], Sequence[MixingRow]],
) -> None:
    """
    Writes a sweep as CSV: a `#` line with the configuration, the header,
    then one line per grid point in grid order.
    """
    strength = cfg.command is Command.SWEEP_STRENGTH
    columns = STRENGTH_COLUMNS if strength else MIXING_COLUMNS
    stream.write(f"# {cfg.describe()}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format(v) for v in row])
