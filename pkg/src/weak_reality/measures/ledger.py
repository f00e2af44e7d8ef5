"""
Bipartite information bookkeeping.

For a system-ancilla state the available information splits as

    I_tot = I_S + I_A + I_S:A

with local terms I_X = ln d_X - S(rho_X) and the quantum mutual
information I_S:A = S(rho_S) + S(rho_A) - S(rho_SA).
"""

import math
from typing import NamedTuple

from weak_reality.errors import DimensionMismatch, InvalidDimension
from weak_reality.measures.entropy import von_neumann_entropy
from weak_reality.qcore.states import DensityMatrix, Subsystem, partial_trace


class InformationLedger(NamedTuple):
    i_system: float
    i_ancilla: float
    i_mutual: float
    i_total: float
    d_system: int
    d_ancilla: int


class InformationChange(NamedTuple):
    # Information gained by the measurement context: mutual + ancilla terms
    delta_context: float
    delta_system: float

    @property
    def gap(self) -> float:
        """
        delta_context + delta_system; zero while the total is conserved.
        """
        return self.delta_context + self.delta_system


def _nonnegative(value: float) -> float:
    return max(value, 0.0)


def information_ledger(rho_sa: DensityMatrix) -> InformationLedger:
    if rho_sa.dim != 4:
        raise InvalidDimension(f"Ledger needs a two-qubit state, got dim {rho_sa.dim}")
    s_system = von_neumann_entropy(partial_trace(rho_sa, Subsystem.SYSTEM))
    s_ancilla = von_neumann_entropy(partial_trace(rho_sa, Subsystem.ANCILLA))
    s_joint = von_neumann_entropy(rho_sa)
    i_system = _nonnegative(math.log(2) - s_system)
    i_ancilla = _nonnegative(math.log(2) - s_ancilla)
    i_mutual = _nonnegative(s_system + s_ancilla - s_joint)
    return InformationLedger(
        i_system=i_system,
        i_ancilla=i_ancilla,
        i_mutual=i_mutual,
        i_total=i_system + i_ancilla + i_mutual,
        d_system=2,
        d_ancilla=2,
    )


def delta_information(
    before: InformationLedger, after: InformationLedger
) -> InformationChange:
    if (before.d_system, before.d_ancilla) != (after.d_system, after.d_ancilla):
        raise DimensionMismatch(
            f"Ledgers for ({before.d_system}, {before.d_ancilla}) and "
            f"({after.d_system}, {after.d_ancilla}) dimensional parts"
        )
    return InformationChange(
        delta_context=(after.i_mutual - before.i_mutual)
        + (after.i_ancilla - before.i_ancilla),
        delta_system=after.i_system - before.i_system,
    )
