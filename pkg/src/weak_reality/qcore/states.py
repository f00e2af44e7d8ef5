import logging
import math
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
import numpy.typing as npt

from weak_reality.errors import (
    DimensionMismatch,
    DimensionTooLarge,
    InvalidDimension,
    NotNormalized,
    NotPositive,
)
from weak_reality.qcore.linalg import (
    ComplexMatrix,
    EigenDecomposition,
    RealVector,
    as_matrix,
    check_hermitian,
    check_same_dim,
    check_unitary,
    eig_hermitian,
    from_spectrum,
)
from weak_reality.settings import MAX_DIM, PSD_FLOOR, TRACE_TOL

_log: logging.Logger = logging.getLogger(__name__)


def _frozen(m: ComplexMatrix) -> ComplexMatrix:
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


PAULI_I: ComplexMatrix = _frozen(np.eye(2))
PAULI_X: ComplexMatrix = _frozen([[0, 1], [1, 0]])
PAULI_Y: ComplexMatrix = _frozen([[0, -1j], [1j, 0]])
PAULI_Z: ComplexMatrix = _frozen([[1, 0], [0, -1]])


class Subsystem(Enum):
    SYSTEM = "system"
    ANCILLA = "ancilla"


class PauliBasis(Enum):
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def matrix(self) -> ComplexMatrix:
        return {PauliBasis.X: PAULI_X, PauliBasis.Y: PAULI_Y, PauliBasis.Z: PAULI_Z}[
            self
        ]


class DensityMatrix:
    """
    Hermitian, unit-trace, positive semidefinite operator.

    Instances are immutable. Eigenvalues in [PSD_FLOOR, 0) are treated
    as rounding noise: they are clamped to zero and the matrix is rebuilt
    from the clamped spectrum.
    """

    __slots__ = ("_mat", "_eig")

    def __init__(self, mat: npt.ArrayLike) -> None:
        m = as_matrix(mat, "density matrix")
        dim = m.shape[0]
        if dim < 2:
            raise InvalidDimension(f"Density matrices need dim >= 2, got {dim}")
        if dim > MAX_DIM:
            raise DimensionTooLarge(f"Dimension {dim} exceeds the supported {MAX_DIM}")
        check_hermitian(m, "density matrix")
        m = (m + m.conj().T) / 2
        if (trace_err := abs(np.trace(m) - 1.0)) > TRACE_TOL:
            raise NotNormalized(
                "density matrix", f"Density matrix trace differs from 1 by {trace_err}"
            )
        eig = eig_hermitian(m)
        smallest = float(eig.eigenvalues[-1])
        if smallest < PSD_FLOOR:
            raise NotPositive(
                "density matrix",
                f"Density matrix has negative eigenvalue {smallest:.3e}",
            )
        if smallest < 0:
            _log.debug(f"Clamping eigenvalue {smallest:.3e} of a density matrix to 0")
            clamped = np.clip(eig.eigenvalues, 0.0, None)
            clamped = clamped / clamped.sum()
            eig = EigenDecomposition(clamped, eig.eigenvectors)
            m = from_spectrum(clamped, eig.eigenvectors)
        self._mat = _frozen(m)
        self._eig = eig

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim) / dim)

    @classmethod
    def diagonal(cls, probabilities: Sequence[float]) -> "DensityMatrix":
        return cls(np.diag(np.asarray(probabilities, dtype=float)))

    @property
    def mat(self) -> ComplexMatrix:
        return self._mat

    @property
    def dim(self) -> int:
        return int(self._mat.shape[0])

    @property
    def eigenvalues(self) -> RealVector:
        return self._eig.eigenvalues

    @property
    def eigenvectors(self) -> ComplexMatrix:
        return self._eig.eigenvectors

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self._mat @ self._mat)))

    def expectation(self, operator: npt.ArrayLike) -> float:
        op = as_matrix(operator, "operator")
        check_same_dim(self._mat, op)
        return float(np.real(np.trace(self._mat @ op)))

    def allclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        return self.dim == other.dim and bool(
            np.allclose(self._mat, other._mat, rtol=0.0, atol=atol)
        )

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, purity={self.purity:.6f})"


class PureState:
    __slots__ = ("_amplitudes",)

    def __init__(self, amplitudes: npt.ArrayLike) -> None:
        vec = np.asarray(amplitudes, dtype=np.complex128)
        if vec.ndim != 1 or vec.shape[0] < 2:
            raise InvalidDimension(
                f"Pure states need a vector of dim >= 2, got {vec.shape}"
            )
        if (norm_err := abs(float(np.vdot(vec, vec).real) - 1.0)) > TRACE_TOL:
            raise NotNormalized("pure state", f"Norm differs from 1 by {norm_err}")
        vec.setflags(write=False)
        self._amplitudes = vec

    @classmethod
    def basis(cls, dim: int, index: int) -> "PureState":
        vec = np.zeros(dim, dtype=np.complex128)
        vec[index] = 1.0
        return cls(vec)

    @classmethod
    def from_angle(cls, theta: float) -> "PureState":
        """
        cos(theta)|0> + sin(theta)|1>
        """
        return cls([math.cos(theta), math.sin(theta)])

    @property
    def amplitudes(self) -> npt.NDArray[np.complex128]:
        return self._amplitudes

    @property
    def dim(self) -> int:
        return int(self._amplitudes.shape[0])

    def tensor(self, other: "PureState") -> "PureState":
        return PureState(np.kron(self._amplitudes, other._amplitudes))

    def projector(self) -> ComplexMatrix:
        return np.outer(self._amplitudes, self._amplitudes.conj())

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.projector())

    def __repr__(self) -> str:
        return f"PureState({np.array2string(self._amplitudes, precision=6)})"


_SQRT_HALF = 1.0 / math.sqrt(2.0)

KET_0 = PureState([1, 0])
KET_1 = PureState([0, 1])
KET_PLUS = PureState([_SQRT_HALF, _SQRT_HALF])
KET_MINUS = PureState([_SQRT_HALF, -_SQRT_HALF])
BELL_PHI_PLUS = PureState([_SQRT_HALF, 0, 0, _SQRT_HALF])


class Observable:
    """
    Hermitian operator O = sum_k o_k |k><k| with its spectral decomposition.

    Outcome index k follows the descending eigenvalue order, so for
    Pauli Z outcome 0 is |0> and outcome 1 is |1>. Degenerate spectra
    keep the rank-1 projectors of the stored eigenbasis.
    """

    __slots__ = ("_mat", "_eigenvalues", "_basis", "_projectors")

    def __init__(self, mat: npt.ArrayLike) -> None:
        m = as_matrix(mat, "observable")
        check_hermitian(m, "observable")
        m = (m + m.conj().T) / 2
        eig = eig_hermitian(m)
        self._init(m, eig.eigenvalues, eig.eigenvectors)

    @classmethod
    def from_eigenbasis(
        cls, eigenvalues: Sequence[float], basis: npt.ArrayLike
    ) -> "Observable":
        """
        Build an observable from outcome values and the unitary whose
        columns are the outcome states, keeping that exact basis.
        """
        vectors = as_matrix(basis, "basis")
        check_unitary(vectors, "basis")
        values = np.asarray(eigenvalues, dtype=float)
        if values.shape != (vectors.shape[0],):
            raise DimensionMismatch(
                f"{values.shape[0]} eigenvalues for a basis of dim {vectors.shape[0]}"
            )
        obs = cls.__new__(cls)
        obs._init(from_spectrum(values, vectors), values, vectors)
        return obs

    @classmethod
    def pauli(cls, basis: PauliBasis) -> "Observable":
        return cls(basis.matrix)

    def _init(
        self, mat: ComplexMatrix, values: RealVector, vectors: ComplexMatrix
    ) -> None:
        self._mat = _frozen(mat)
        self._eigenvalues = np.array(values, dtype=float)
        self._eigenvalues.setflags(write=False)
        self._basis = _frozen(vectors)
        self._projectors = [
            _frozen(np.outer(vectors[:, k], vectors[:, k].conj()))
            for k in range(vectors.shape[1])
        ]

    @property
    def mat(self) -> ComplexMatrix:
        return self._mat

    @property
    def dim(self) -> int:
        return int(self._mat.shape[0])

    @property
    def eigenvalues(self) -> RealVector:
        return self._eigenvalues

    @property
    def basis(self) -> ComplexMatrix:
        return self._basis

    @property
    def projectors(self) -> List[ComplexMatrix]:
        return list(self._projectors)

    def __repr__(self) -> str:
        return f"Observable(eigenvalues={self._eigenvalues.tolist()})"


PAULI_Z_OBSERVABLE = Observable.pauli(PauliBasis.Z)


def partial_trace_matrix(m: npt.ArrayLike, keep: Subsystem) -> ComplexMatrix:
    """
    Partial trace of a 4x4 operator over one qubit, in the
    |system, ancilla> ordering.
    """
    mat = as_matrix(m)
    if mat.shape != (4, 4):
        raise InvalidDimension(f"Partial trace needs a 4x4 operator, got {mat.shape}")
    blocks = mat.reshape(2, 2, 2, 2)
    if keep is Subsystem.SYSTEM:
        return np.einsum("iaja->ij", blocks)
    return np.einsum("sisj->ij", blocks)


def partial_trace(rho: DensityMatrix, keep: Subsystem) -> DensityMatrix:
    return DensityMatrix(partial_trace_matrix(rho.mat, keep))


def apply_unitary(rho: DensityMatrix, u: npt.ArrayLike) -> DensityMatrix:
    mat = as_matrix(u, "unitary")
    if mat.shape != rho.mat.shape:
        raise DimensionMismatch(
            f"Unitary of shape {mat.shape} on a state of dim {rho.dim}"
        )
    check_unitary(mat)
    return DensityMatrix(mat @ rho.mat @ mat.conj().T)


def product_state(system: DensityMatrix, ancilla: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(system.mat, ancilla.mat))


def mixture(
    states: Sequence[DensityMatrix], weights: Optional[Sequence[float]] = None
) -> DensityMatrix:
    if not states:
        raise InvalidDimension("Cannot mix an empty list of states")
    w = (
        np.full(len(states), 1.0 / len(states))
        if weights is None
        else np.asarray(weights, dtype=float)
    )
    return DensityMatrix(sum(wi * s.mat for wi, s in zip(w, states)))
