import math

import numpy as np
import pytest

from weak_reality.errors import (
    DimensionMismatch,
    DimensionTooLarge,
    InvalidDimension,
    NotHermitian,
    NotNormalized,
    NotPositive,
    NotUnitary,
)
from weak_reality.qcore.sampling import (
    random_density_matrix,
    random_pure_state,
    random_unitary,
)
from weak_reality.qcore.states import (
    BELL_PHI_PLUS,
    KET_0,
    KET_PLUS,
    PAULI_Z_OBSERVABLE,
    DensityMatrix,
    Observable,
    PauliBasis,
    PureState,
    Subsystem,
    apply_unitary,
    mixture,
    partial_trace,
    partial_trace_matrix,
    product_state,
)
from weak_reality.weakmeas.meter import MeterSpec, cphase_unitary, meter_state


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


def test_density_matrix_validation() -> None:
    with pytest.raises(NotHermitian):
        DensityMatrix([[0.5, 0.5], [0.0, 0.5]])
    with pytest.raises(NotNormalized):
        DensityMatrix(np.eye(2))
    with pytest.raises(NotPositive):
        DensityMatrix(np.diag([1.1, -0.1]))
    with pytest.raises(InvalidDimension):
        DensityMatrix([[1.0]])
    with pytest.raises(DimensionTooLarge):
        DensityMatrix(np.eye(16) / 16)


def test_density_matrix_clamps_rounding_noise() -> None:
    rho = DensityMatrix(np.diag([1.0 + 5e-11, -5e-11]))
    assert rho.eigenvalues[-1] == 0.0
    assert np.allclose(rho.mat, np.diag([1.0, 0.0]), atol=1e-15)


def test_density_matrix_is_immutable() -> None:
    rho = DensityMatrix.maximally_mixed(2)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1.0


def test_density_matrix_properties() -> None:
    rho = KET_PLUS.density()
    assert rho.dim == 2
    assert rho.purity == pytest.approx(1.0)
    assert rho.expectation(PauliBasis.X.matrix) == pytest.approx(1.0)
    assert rho.expectation(PauliBasis.Z.matrix) == pytest.approx(0.0)
    assert DensityMatrix.maximally_mixed(4).purity == pytest.approx(0.25)
    assert DensityMatrix.diagonal([0.25, 0.75]).allclose(
        DensityMatrix(np.diag([0.25, 0.75]))
    )
    with pytest.raises(DimensionMismatch):
        rho.expectation(np.eye(4))


def test_pure_state() -> None:
    with pytest.raises(NotNormalized):
        PureState([1.0, 1.0])
    with pytest.raises(InvalidDimension):
        PureState([1.0])
    psi = PureState.from_angle(math.pi / 6)
    assert psi.amplitudes.tolist() == pytest.approx(
        [math.cos(math.pi / 6), math.sin(math.pi / 6)]
    )
    assert PureState.basis(4, 3).tensor(KET_0).dim == 8
    assert KET_PLUS.density().allclose(
        DensityMatrix(np.full((2, 2), 0.5, dtype=complex))
    )


def test_observable_projectors(rng: np.random.Generator) -> None:
    for obs in (
        PAULI_Z_OBSERVABLE,
        Observable.pauli(PauliBasis.X),
        Observable.pauli(PauliBasis.Y),
        Observable.from_eigenbasis([2.0, -0.5], random_unitary(rng, 2)),
    ):
        projectors = obs.projectors
        assert np.max(np.abs(sum(projectors) - np.eye(2))) <= 1e-12
        assert np.max(np.abs(projectors[0] @ projectors[1])) <= 1e-12
        rebuilt = sum(o * p for o, p in zip(obs.eigenvalues, projectors))
        assert np.max(np.abs(rebuilt - obs.mat)) <= 1e-12


def test_pauli_z_outcome_order() -> None:
    zero, one = PAULI_Z_OBSERVABLE.projectors
    assert np.array_equal(zero, np.diag([1.0, 0.0]))
    assert np.array_equal(one, np.diag([0.0, 1.0]))


def test_observable_errors() -> None:
    with pytest.raises(NotHermitian):
        Observable([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NotUnitary):
        Observable.from_eigenbasis([1.0, -1.0], [[1.0, 1.0], [0.0, 1.0]])
    with pytest.raises(DimensionMismatch):
        Observable.from_eigenbasis([1.0, 0.0, -1.0], np.eye(2))


def test_partial_trace_of_products(rng: np.random.Generator) -> None:
    for _ in range(20):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        m = np.kron(a, b)
        assert np.allclose(
            partial_trace_matrix(m, Subsystem.SYSTEM), a * np.trace(b), atol=1e-12
        )
        assert np.allclose(
            partial_trace_matrix(m, Subsystem.ANCILLA), b * np.trace(a), atol=1e-12
        )
    with pytest.raises(InvalidDimension):
        partial_trace_matrix(np.eye(2), Subsystem.SYSTEM)


def test_bell_marginals_are_maximally_mixed() -> None:
    bell = BELL_PHI_PLUS.density()
    for keep in Subsystem:
        assert partial_trace(bell, keep).allclose(DensityMatrix.maximally_mixed(2))


def test_full_strength_coupling_leaves_system_mixed() -> None:
    joint = apply_unitary(
        product_state(KET_PLUS.density(), meter_state(MeterSpec.from_degrees(45.0))),
        cphase_unitary(),
    )
    reduced = partial_trace(joint, Subsystem.SYSTEM)
    assert reduced.allclose(DensityMatrix.maximally_mixed(2))


def test_apply_unitary_preserves_spectrum(rng: np.random.Generator) -> None:
    for _ in range(20):
        rho = random_density_matrix(rng, 4)
        out = apply_unitary(rho, random_unitary(rng, 4))
        assert np.trace(out.mat).real == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(out.eigenvalues, rho.eigenvalues, atol=1e-10)
    with pytest.raises(NotUnitary):
        apply_unitary(KET_0.density(), 2 * np.eye(2))
    with pytest.raises(DimensionMismatch):
        apply_unitary(KET_0.density(), np.eye(4))


def test_mixture() -> None:
    mixed = mixture([KET_0.density(), PureState.basis(2, 1).density()])
    assert mixed.allclose(DensityMatrix.maximally_mixed(2))
    weighted = mixture([KET_0.density(), KET_PLUS.density()], [0.25, 0.75])
    assert weighted.mat[0, 1].real == pytest.approx(0.375)
    with pytest.raises(InvalidDimension):
        mixture([])


def test_random_draws(rng: np.random.Generator) -> None:
    u = random_unitary(rng, 3)
    assert np.allclose(u @ u.conj().T, np.eye(3), atol=1e-12)
    assert random_pure_state(rng).density().purity == pytest.approx(1.0)
    assert random_density_matrix(rng, 4, rank=1).purity == pytest.approx(1.0)
    assert random_density_matrix(rng, 2).eigenvalues[-1] > 0.0
    with pytest.raises(InvalidDimension):
        random_unitary(rng, 9)


def test_random_draws_are_reproducible() -> None:
    a = random_density_matrix(np.random.default_rng(3), 4)
    b = random_density_matrix(np.random.default_rng(3), 4)
    assert np.array_equal(a.mat, b.mat)
