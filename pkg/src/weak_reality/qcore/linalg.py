"""
Dense complex linear algebra for the small operators used everywhere else.

Matrices are plain ``numpy`` complex128 arrays. The Hermitian
eigensolver is a cyclic complex Jacobi iteration: every rotation first
removes the phase of the pivot element and then applies the classic
real rotation, so the accumulated eigenvector matrix stays unitary to
rounding.
"""

import logging
import math
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from weak_reality.errors import (
    DimensionMismatch,
    DimensionTooLarge,
    InvalidDimension,
    NotHermitian,
    NotUnitary,
)
from weak_reality.settings import (
    HERMITIAN_TOL,
    JACOBI_MAX_SWEEPS,
    JACOBI_OFFDIAG_TOL,
    MAX_DIM,
    UNITARY_TOL,
)

_log: logging.Logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

_TINY = np.finfo(float).tiny


class EigenDecomposition(NamedTuple):
    # Sorted descending
    eigenvalues: RealVector
    # Orthonormal eigenvectors as columns, in eigenvalue order
    eigenvectors: ComplexMatrix


def as_matrix(m: npt.ArrayLike, name: str = "matrix") -> ComplexMatrix:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidDimension(
            f"{name} must be a non-empty square matrix, got {arr.shape}"
        )
    return arr


def hermiticity_error(m: ComplexMatrix) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(m: ComplexMatrix, name: str = "matrix") -> None:
    if (err := hermiticity_error(m)) > HERMITIAN_TOL:
        raise NotHermitian(name, f"{name} is not Hermitian (max|m - m†| = {err:.3e})")


def check_unitary(u: ComplexMatrix, name: str = "unitary") -> None:
    identity = np.eye(u.shape[0], dtype=np.complex128)
    if (err := float(np.max(np.abs(u @ u.conj().T - identity)))) > UNITARY_TOL:
        raise NotUnitary(name, f"{name} is not unitary (max|u u† - I| = {err:.3e})")


def check_same_dim(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"Dimension mismatch: {a.shape} vs {b.shape}")


def _off_diagonal_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi_rotation(a: ComplexMatrix, p: int, q: int) -> ComplexMatrix:
    apq = a[p, q]
    g = abs(apq)
    phase = np.conj(apq / g)
    tau = (a[q, q].real - a[p, p].real) / (2.0 * g)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    rot = np.eye(a.shape[0], dtype=np.complex128)
    rot[p, p] = c
    rot[p, q] = s
    rot[q, p] = -s * phase
    rot[q, q] = c * phase
    return rot


def eig_hermitian(m: npt.ArrayLike) -> EigenDecomposition:
    """
    Eigen-decomposition of a Hermitian matrix of dimension <= 8.

    Returns real eigenvalues sorted descending and the unitary matrix
    whose columns are the matching eigenvectors.
    """
    a = as_matrix(m)
    dim = a.shape[0]
    if dim > MAX_DIM:
        raise DimensionTooLarge(f"Dimension {dim} exceeds the supported {MAX_DIM}")
    check_hermitian(a)
    a = (a + a.conj().T) / 2
    v = np.eye(dim, dtype=np.complex128)
    threshold = JACOBI_OFFDIAG_TOL * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _off_diagonal_norm(a) >= threshold:
        if sweeps == JACOBI_MAX_SWEEPS:
            _log.warning(
                f"Jacobi iteration stopped after {sweeps} sweeps "
                f"(off-diagonal norm {_off_diagonal_norm(a):.3e})"
            )
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                if abs(a[p, q]) < _TINY:
                    continue
                rot = _jacobi_rotation(a, p, q)
                a = rot.conj().T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
        sweeps += 1

    eigenvalues = np.real(np.diag(a)).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return EigenDecomposition(
        eigenvalues=eigenvalues[order],
        eigenvectors=v[:, order],
    )


def tensor(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """
    Kronecker product with the system as the left factor, so entry
    (i*db + k, j*db + l) is a[i, j] * b[k, l].
    """
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def from_spectrum(
    eigenvalues: npt.ArrayLike, eigenvectors: ComplexMatrix
) -> ComplexMatrix:
    return (eigenvectors * np.asarray(eigenvalues)) @ eigenvectors.conj().T


def hermitian_sqrt(m: ComplexMatrix) -> ComplexMatrix:
    # Negative rounding noise is treated as zero.
    eig = eig_hermitian(m)
    return from_spectrum(np.sqrt(np.clip(eig.eigenvalues, 0.0, None)), eig.eigenvectors)


def trace_distance(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    ma, mb = as_matrix(a, "a"), as_matrix(b, "b")
    check_same_dim(ma, mb)
    diff = ma - mb
    return 0.5 * float(np.sum(np.abs(eig_hermitian((diff + diff.conj().T) / 2)[0])))


def fidelity(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """
    Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 between two states.
    """
    ma, mb = as_matrix(a, "a"), as_matrix(b, "b")
    check_same_dim(ma, mb)
    root = hermitian_sqrt(ma)
    inner = root @ mb @ root
    eigenvalues = eig_hermitian((inner + inner.conj().T) / 2).eigenvalues
    value = float(np.sum(np.sqrt(np.clip(eigenvalues, 0.0, None)))) ** 2
    return min(max(value, 0.0), 1.0)


def frobenius_distance(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    ma, mb = as_matrix(a, "a"), as_matrix(b, "b")
    check_same_dim(ma, mb)
    return float(np.linalg.norm(ma - mb))
