"""
State reconstruction from two-qubit Pauli tomography counts.

Three estimators are offered: plain linear inversion, linear inversion
projected onto the closest physical state, and an iterative maximum
likelihood estimate.
"""

import logging
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import numpy.typing as npt

from weak_reality.configuration import ReconstructionMethod
from weak_reality.errors import NonConvergence, NotNormalized, OutOfRange
from weak_reality.qcore.linalg import (
    ComplexMatrix,
    as_matrix,
    check_hermitian,
    eig_hermitian,
    fidelity,
    from_spectrum,
)
from weak_reality.qcore.states import PAULI_I, DensityMatrix, PauliBasis
from weak_reality.settings import DEFAULT_MLE_MAX_ITER, DEFAULT_MLE_TOL, TRACE_TOL
from weak_reality.tomography.counts import ALL_SETTINGS, CountTable, setting_projectors

_log: logging.Logger = logging.getLogger(__name__)

# Signs of the (++, +-, -+, --) outcomes in each Pauli expectation
_CORRELATION_SIGNS = np.array([1.0, -1.0, -1.0, 1.0])
_SYSTEM_SIGNS = np.array([1.0, 1.0, -1.0, -1.0])
_ANCILLA_SIGNS = np.array([1.0, -1.0, 1.0, -1.0])

# Index of each basis in the (I, X, Y, Z) ordering of pauli_expectations
_PAULI_INDEX = {PauliBasis.X: 1, PauliBasis.Y: 2, PauliBasis.Z: 3}
_PAULIS = (PAULI_I, PauliBasis.X.matrix, PauliBasis.Y.matrix, PauliBasis.Z.matrix)
_IDENTITY_4 = np.eye(4, dtype=np.complex128)

# Log-likelihood decrease tolerated as rounding when accepting an MLE step
_LL_ROUNDING = 1e-12
_MAX_HALVINGS = 40
# Weight of the maximally mixed state blended into the default starting
# point, so the iteration can reach every direction
_WARM_START_MIXING = 1e-12
# At a likelihood maximum R <= I; larger excess means the iterate is stuck
_OPTIMALITY_TOL = 1e-6


class ReconstructionResult(NamedTuple):
    rho_hat: DensityMatrix
    method: ReconstructionMethod
    iterations: int
    log_likelihood: float
    converged: bool = True
    # Only known when the reconstruction was given the true state
    fidelity_to_truth: Optional[float] = None
    # Per accepted iteration, MLE only
    log_likelihoods: Tuple[float, ...] = ()


def pauli_expectations(counts: CountTable) -> npt.NDArray[np.float64]:
    """
    4x4 table E[i, j] = <sigma_i (x) sigma_j> over (I, X, Y, Z).

    Single-qubit terms are the average over the three settings that
    measure that qubit in the same basis.
    """
    counts.check_complete()
    e = np.zeros((4, 4))
    e[0, 0] = 1.0
    for setting in ALL_SETTINGS:
        f = counts.frequencies(setting)
        i, j = _PAULI_INDEX[setting.basis_s], _PAULI_INDEX[setting.basis_a]
        e[i, j] = float(f @ _CORRELATION_SIGNS)
        e[i, 0] += float(f @ _SYSTEM_SIGNS) / 3.0
        e[0, j] += float(f @ _ANCILLA_SIGNS) / 3.0
    return e


def linear_inversion(counts: CountTable) -> ComplexMatrix:
    """
    rho = 1/4 sum_ij E_ij sigma_i (x) sigma_j. Hermitian with unit trace,
    but not necessarily positive.
    """
    e = pauli_expectations(counts)
    m = np.zeros((4, 4), dtype=np.complex128)
    for i, sigma_i in enumerate(_PAULIS):
        for j, sigma_j in enumerate(_PAULIS):
            m += e[i, j] * np.kron(sigma_i, sigma_j)
    return m / 4.0


def project_to_physical(m: npt.ArrayLike) -> DensityMatrix:
    """
    Closest density matrix in Frobenius norm: the most negative
    eigenvalues are zeroed and their deficit is spread evenly over the
    rest until the spectrum is non-negative.
    """
    m = as_matrix(m, "estimate")
    check_hermitian(m, "estimate")
    if abs(np.trace(m) - 1.0) > TRACE_TOL:
        raise NotNormalized("estimate", "Estimate must have unit trace")
    eig = eig_hermitian(m)
    values = eig.eigenvalues
    if values[-1] >= 0.0:
        return DensityMatrix(m)

    kept = len(values)
    deficit = 0.0
    while values[kept - 1] + deficit / kept < 0.0:
        deficit += values[kept - 1]
        kept -= 1
    projected = np.zeros_like(values)
    projected[:kept] = values[:kept] + deficit / kept
    _log.debug(f"Projected out {len(values) - kept} negative eigenvalues")
    return DensityMatrix(from_spectrum(projected, eig.eigenvectors))


class _Effects(NamedTuple):
    projectors: npt.NDArray[np.complex128]
    frequencies: npt.NDArray[np.float64]


def _effects(counts: CountTable) -> _Effects:
    counts.check_complete()
    projectors: List[ComplexMatrix] = []
    frequencies: List[float] = []
    for setting in ALL_SETTINGS:
        projectors.extend(setting_projectors(setting))
        frequencies.extend(counts.frequencies(setting))
    return _Effects(np.array(projectors), np.array(frequencies))


def _probabilities(rho: ComplexMatrix, effects: _Effects) -> npt.NDArray[np.float64]:
    return np.real(np.einsum("kij,ji->k", effects.projectors, rho))


def _log_likelihood(rho: ComplexMatrix, effects: _Effects) -> float:
    observed = effects.frequencies > 0.0
    probs = np.clip(_probabilities(rho, effects)[observed], np.finfo(float).tiny, None)
    return float(np.sum(effects.frequencies[observed] * np.log(probs)))


def log_likelihood(rho: DensityMatrix, counts: CountTable) -> float:
    """
    Per-shot log-likelihood sum_k f_k ln p_k(rho), natural log, summed
    over all settings.
    """
    return _log_likelihood(rho.mat, _effects(counts))


def _r_operator(rho: ComplexMatrix, effects: _Effects) -> ComplexMatrix:
    observed = effects.frequencies > 0.0
    probs = np.clip(
        _probabilities(rho, effects)[observed], np.finfo(float).eps, None
    )
    weights = effects.frequencies[observed] / probs
    # Nine complete settings: R psi = psi on the support of a fixed point
    projectors = effects.projectors[observed]
    return np.einsum("k,kij->ij", weights, projectors) / len(ALL_SETTINGS)


def _diluted_step(
    rho: ComplexMatrix, r: ComplexMatrix, dilution: float
) -> ComplexMatrix:
    update = _IDENTITY_4 + dilution * (r - _IDENTITY_4)
    nxt = update @ rho @ update.conj().T
    nxt = (nxt + nxt.conj().T) / 2.0
    return nxt / np.real(np.trace(nxt))


def _optimality_gap(r: ComplexMatrix) -> float:
    return float(eig_hermitian(r).eigenvalues[0]) - 1.0


def _starting_point(counts: CountTable) -> ComplexMatrix:
    plin = project_to_physical(linear_inversion(counts)).mat
    return (1.0 - _WARM_START_MIXING) * plin + _WARM_START_MIXING * _IDENTITY_4 / 4.0


def mle_reconstruct(
    counts: CountTable,
    max_iter: int = DEFAULT_MLE_MAX_ITER,
    tol: float = DEFAULT_MLE_TOL,
    step_tol: Optional[float] = None,
    truth: Optional[DensityMatrix] = None,
    raise_on_nonconvergence: bool = False,
    initial: Optional[DensityMatrix] = None,
) -> ReconstructionResult:
    """
    Diluted R rho R iteration.

    Starts from `initial`, or by default from the projected linear
    inversion blended with a trace of the maximally mixed state. A step
    whose log-likelihood would fall is retried with half the dilution, so
    the recorded log-likelihoods never decrease beyond rounding. The
    iteration stops once the improvement drops below tol, the Frobenius
    size of the step drops below step_tol (when given), and no eigenvalue
    of R exceeds 1. Running out of halvings ends the iteration unconverged.
    """
    if max_iter < 1:
        raise OutOfRange("max_iter", max_iter, "max_iter must be >= 1")
    effects = _effects(counts)
    rho = _starting_point(counts) if initial is None else initial.mat.copy()
    current = _log_likelihood(rho, effects)
    history = [current]
    converged = False
    stalled = False
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        r = _r_operator(rho, effects)
        dilution = 1.0
        for _ in range(_MAX_HALVINGS):
            candidate = _diluted_step(rho, r, dilution)
            if np.all(np.isfinite(candidate)):
                candidate_ll = _log_likelihood(candidate, effects)
                if candidate_ll >= current - _LL_ROUNDING:
                    break
            dilution /= 2.0
        else:
            stalled = True
            break
        step = float(np.linalg.norm(candidate - rho))
        improvement = candidate_ll - current
        rho, current = candidate, candidate_ll
        history.append(current)
        if (
            improvement < tol
            and (step_tol is None or step < step_tol)
            and _optimality_gap(_r_operator(rho, effects)) <= _OPTIMALITY_TOL
        ):
            converged = True
            break

    result = ReconstructionResult(
        rho_hat=DensityMatrix(rho),
        method=ReconstructionMethod.MLE,
        iterations=iterations,
        log_likelihood=current,
        converged=converged,
        fidelity_to_truth=None,
        log_likelihoods=tuple(history),
    )
    if truth is not None:
        fidelity_to_truth = fidelity(result.rho_hat.mat, truth.mat)
        result = result._replace(fidelity_to_truth=fidelity_to_truth)
    _log.debug(
        f"MLE stopped after {iterations} iterations, log-likelihood {current!r}"
    )
    if not converged:
        if stalled:
            message = f"MLE found no admissible step at iteration {iterations}"
        else:
            message = f"MLE did not converge within {max_iter} iterations"
        if raise_on_nonconvergence:
            raise NonConvergence(message, last_iterate=result, iterations=iterations)
        _log.warning(message)
    return result


def reconstruct(
    counts: CountTable,
    method: ReconstructionMethod = ReconstructionMethod.PROJECTED_LINEAR_INVERSION,
    truth: Optional[DensityMatrix] = None,
    max_iter: int = DEFAULT_MLE_MAX_ITER,
    tol: float = DEFAULT_MLE_TOL,
) -> ReconstructionResult:
    """
    Reconstructs a physical state with the given method.

    Plain linear inversion raises NotPositive when its estimate is not a
    density matrix.
    """
    if method is ReconstructionMethod.MLE:
        return mle_reconstruct(counts, max_iter=max_iter, tol=tol, truth=truth)
    if method is ReconstructionMethod.LINEAR_INVERSION:
        rho_hat = DensityMatrix(linear_inversion(counts))
    else:
        rho_hat = project_to_physical(linear_inversion(counts))
    return ReconstructionResult(
        rho_hat=rho_hat,
        method=method,
        iterations=0,
        log_likelihood=log_likelihood(rho_hat, counts),
        fidelity_to_truth=None if truth is None else fidelity(rho_hat.mat, truth.mat),
    )
