import math

import numpy as np
import pytest

from weak_reality.configuration import ReconstructionMethod
from weak_reality.errors import OutOfRange
from weak_reality.executors.default import DefaultExecutor
from weak_reality.qcore.states import KET_0
from weak_reality.tomography.counts import expected_counts, simulate_counts
from weak_reality.tomography.estimates import (
    estimate_quantities,
    estimate_with_resampling,
)
from weak_reality.tomography.reconstruction import reconstruct
from weak_reality.weakmeas.experiment import closed_form_delta_reality, run_experiment
from weak_reality.weakmeas.meter import THETA_MAX, MeterSpec

LN2 = math.log(2)


@pytest.mark.parametrize(
    "method",
    [ReconstructionMethod.PROJECTED_LINEAR_INVERSION, ReconstructionMethod.MLE],
)
@pytest.mark.parametrize("theta_deg", [0.0, 10.0, 16.0, 30.0, 45.0])
def test_exact_data_reproduces_closed_form(
    theta_deg: float, method: ReconstructionMethod
) -> None:
    theta = math.radians(theta_deg)
    result = run_experiment(None, MeterSpec(theta))
    rec = reconstruct(expected_counts(result.rho_sa_out), method)
    assert rec.converged
    estimate = estimate_quantities(rec, result.epsilon)
    report = estimate.report
    assert report.delta_reality == pytest.approx(
        closed_form_delta_reality(theta), abs=1e-8
    )
    assert report.bound_rhs == pytest.approx(result.epsilon * LN2, abs=1e-12)
    assert -report.delta_information == pytest.approx(report.delta_reality, abs=1e-8)
    assert estimate.ledger.i_total == pytest.approx(
        result.ledger_after.i_total, abs=1e-8
    )


def test_estimates_for_another_system() -> None:
    result = run_experiment(KET_0.density(), MeterSpec(THETA_MAX))
    rec = reconstruct(expected_counts(result.rho_sa_out))
    report = estimate_quantities(rec, 1.0, system=KET_0.density()).report
    assert report.irreality_before == 0.0
    assert report.delta_reality == pytest.approx(0.0, abs=1e-8)


def test_full_strength_estimate_at_finite_shots() -> None:
    result = run_experiment(None, MeterSpec(THETA_MAX))
    counts = simulate_counts(result.rho_sa_out, 100_000, seed=21)
    report = estimate_quantities(reconstruct(counts), result.epsilon).report
    assert report.delta_reality == pytest.approx(LN2, abs=0.02)


def test_resampling() -> None:
    result = run_experiment(None, MeterSpec(math.radians(16.0)))
    method = ReconstructionMethod.PROJECTED_LINEAR_INVERSION
    args = (result.rho_sa_out, 10_000, 5, 4, method)
    resampled = estimate_with_resampling(*args, result.epsilon)
    assert len(resampled.estimates) == 4
    assert resampled.delta_reality_std > 0.0
    assert resampled.mle_iterations == 0
    values = [e.report.delta_reality for e in resampled.estimates]
    assert resampled.delta_reality_mean == pytest.approx(np.mean(values))
    assert resampled.delta_reality_mean == pytest.approx(
        result.report.delta_reality, abs=0.05
    )
    information = [-e.report.delta_information for e in resampled.estimates]
    assert resampled.delta_information_mean == pytest.approx(np.mean(information))
    assert resampled.delta_information_std == pytest.approx(
        np.std(information, ddof=1)
    )
    assert resampled.delta_information_mean == pytest.approx(
        -result.report.delta_information, abs=0.05
    )

    again = estimate_with_resampling(
        *args, result.epsilon, executor=DefaultExecutor(2)
    )
    assert again.delta_reality_mean == resampled.delta_reality_mean
    assert again.delta_reality_std == resampled.delta_reality_std


def test_resampling_edge_cases() -> None:
    rho = run_experiment(None, MeterSpec(THETA_MAX)).rho_sa_out
    single = estimate_with_resampling(
        rho, 1000, 0, 1, ReconstructionMethod.MLE, 1.0
    )
    assert single.delta_reality_std == 0.0
    assert single.delta_information_std == 0.0
    assert single.mle_iterations > 0
    with pytest.raises(OutOfRange):
        estimate_with_resampling(
            rho, 1000, 0, 0, ReconstructionMethod.PROJECTED_LINEAR_INVERSION, 1.0
        )


@pytest.mark.slow
def test_estimates_converge_with_shots() -> None:
    result = run_experiment(None, MeterSpec(math.radians(16.0)))
    exact = result.report.delta_reality
    medians = []
    for shots in (1_000, 10_000, 100_000, 1_000_000):
        errors = [
            abs(
                estimate_quantities(
                    reconstruct(simulate_counts(result.rho_sa_out, shots, seed)),
                    result.epsilon,
                ).report.delta_reality
                - exact
            )
            for seed in range(50)
        ]
        medians.append(float(np.median(errors)))
    assert np.all(np.diff(medians) < 0.0)


@pytest.mark.slow
def test_tomography_end_to_end_across_strengths() -> None:
    fidelities, errors = [], []
    for theta_deg in np.linspace(0.0, 45.0, 10):
        theta = math.radians(theta_deg)
        result = run_experiment(None, MeterSpec(theta))
        exact = closed_form_delta_reality(theta)
        for seed in range(50):
            counts = simulate_counts(result.rho_sa_out, 100_000, seed)
            rec = reconstruct(counts, truth=result.rho_sa_out)
            report = estimate_quantities(rec, result.epsilon).report
            fidelities.append(rec.fidelity_to_truth)
            errors.append(abs(report.delta_reality - exact))
    assert np.median(fidelities) >= 0.99
    assert np.median(errors) <= 0.02
