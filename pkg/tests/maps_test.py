import numpy as np
import pytest

from weak_reality.errors import DimensionMismatch, InvalidOutcome, OutOfRange
from weak_reality.measures.maps import (
    dephasing_map,
    monitoring_map,
    outcome_probabilities,
    weak_collapse,
)
from weak_reality.qcore.sampling import random_density_matrix, random_unitary
from weak_reality.qcore.states import (
    KET_0,
    KET_PLUS,
    PAULI_Z_OBSERVABLE,
    DensityMatrix,
    Observable,
)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(11)


def test_dephasing_removes_coherence() -> None:
    dephased = dephasing_map(KET_PLUS.density(), PAULI_Z_OBSERVABLE)
    assert dephased.allclose(DensityMatrix.maximally_mixed(2))


def test_outcome_probabilities() -> None:
    probs = outcome_probabilities(KET_0.density(), PAULI_Z_OBSERVABLE)
    assert probs.tolist() == pytest.approx([1.0, 0.0])


def test_weak_collapse() -> None:
    rho = KET_PLUS.density()
    collapsed = weak_collapse(rho, PAULI_Z_OBSERVABLE, 1, 0.25)
    expected = 0.75 * rho.mat + 0.25 * np.diag([0.0, 1.0])
    assert np.allclose(collapsed.mat, expected, atol=1e-12)
    assert weak_collapse(rho, PAULI_Z_OBSERVABLE, 0, 0.0).allclose(rho)
    assert weak_collapse(rho, PAULI_Z_OBSERVABLE, 0, 1.0).allclose(KET_0.density())


def test_weak_collapse_errors() -> None:
    rho = KET_PLUS.density()
    with pytest.raises(InvalidOutcome):
        weak_collapse(rho, PAULI_Z_OBSERVABLE, 2, 0.5)
    with pytest.raises(OutOfRange):
        weak_collapse(rho, PAULI_Z_OBSERVABLE, 0, 1.5)
    with pytest.raises(DimensionMismatch):
        weak_collapse(DensityMatrix.maximally_mixed(4), PAULI_Z_OBSERVABLE, 0, 0.5)


def test_monitoring_endpoints(rng: np.random.Generator) -> None:
    for _ in range(20):
        rho = random_density_matrix(rng, 2)
        obs = Observable.from_eigenbasis([1.0, -1.0], random_unitary(rng, 2))
        assert monitoring_map(rho, obs, 0.0).allclose(rho)
        assert monitoring_map(rho, obs, 1.0).allclose(dephasing_map(rho, obs))


def test_monitoring_interpolates(rng: np.random.Generator) -> None:
    for _ in range(20):
        rho = random_density_matrix(rng, 2)
        epsilon = float(rng.random())
        monitored = monitoring_map(rho, PAULI_Z_OBSERVABLE, epsilon)
        expected = (1 - epsilon) * rho.mat + epsilon * dephasing_map(
            rho, PAULI_Z_OBSERVABLE
        ).mat
        assert np.allclose(monitored.mat, expected, atol=1e-12)


def test_monitoring_commutes_with_dephasing(rng: np.random.Generator) -> None:
    for _ in range(200):
        rho = random_density_matrix(rng, 2)
        obs = Observable.from_eigenbasis(
            sorted(rng.normal(size=2), reverse=True), random_unitary(rng, 2)
        )
        epsilon = float(rng.random())
        lhs = dephasing_map(monitoring_map(rho, obs, epsilon), obs)
        rhs = monitoring_map(dephasing_map(rho, obs), obs, epsilon)
        assert np.max(np.abs(lhs.mat - rhs.mat)) <= 1e-12


def test_maps_on_larger_systems(rng: np.random.Generator) -> None:
    rho = random_density_matrix(rng, 4)
    obs = Observable.from_eigenbasis([3.0, 1.0, 0.0, -2.0], random_unitary(rng, 4))
    dephased = dephasing_map(rho, obs)
    assert np.trace(dephased.mat).real == pytest.approx(1.0, abs=1e-12)
    assert dephasing_map(dephased, obs).allclose(dephased)
