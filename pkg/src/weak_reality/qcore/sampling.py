"""
Random states and unitaries drawn from a caller-supplied numpy Generator,
so every draw is reproducible from a seed.
"""

from typing import Optional

import numpy as np

from weak_reality.errors import InvalidDimension, OutOfRange
from weak_reality.qcore.linalg import ComplexMatrix
from weak_reality.qcore.states import DensityMatrix, PureState
from weak_reality.settings import MAX_DIM


def _check_dim(dim: int) -> None:
    if not 2 <= dim <= MAX_DIM:
        raise InvalidDimension(f"Dimension {dim} is outside [2, {MAX_DIM}]")


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> ComplexMatrix:
    return (
        rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    ) / np.sqrt(2.0)


def random_unitary(rng: np.random.Generator, dim: int) -> ComplexMatrix:
    """
    Haar-random unitary: QR of a Ginibre matrix with the phases of R's
    diagonal moved back into Q.
    """
    _check_dim(dim)
    q, r = np.linalg.qr(_ginibre(rng, dim, dim))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q @ np.diag(phases)


def random_pure_state(rng: np.random.Generator, dim: int = 2) -> PureState:
    _check_dim(dim)
    v = _ginibre(rng, dim, 1)[:, 0]
    return PureState(v / np.linalg.norm(v))


def random_density_matrix(
    rng: np.random.Generator,
    dim: int = 2,
    rank: Optional[int] = None,
) -> DensityMatrix:
    """
    Random state G G^dagger / Tr(G G^dagger) for a dim x rank Ginibre G.
    Full rank when rank is None; rank 1 gives a pure state.
    """
    _check_dim(dim)
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise OutOfRange("rank", rank, f"rank must lie in [1, {dim}]")
    g = _ginibre(rng, dim, rank)
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2.0
    return DensityMatrix(m / np.real(np.trace(m)))
