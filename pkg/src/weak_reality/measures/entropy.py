import math
from enum import Enum

import numpy as np

from weak_reality.errors import OutOfRange
from weak_reality.qcore.states import DensityMatrix
from weak_reality.settings import LN2


class Units(Enum):
    NATS = "nats"
    BITS = "bits"


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """
    S(rho) = -sum_i l_i ln l_i in nats, with 0 ln 0 = 0.
    """
    eigenvalues = rho.eigenvalues[rho.eigenvalues > 0.0]
    entropy = -float(np.sum(eigenvalues * np.log(eigenvalues)))
    return min(max(entropy, 0.0), math.log(rho.dim))


def shannon_binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange("p", p, f"Probability p={p!r} must lie in [0, 1]")
    return sum(-x * math.log(x) for x in (p, 1.0 - p) if x > 0.0)


def to_units(value: float, units: Units) -> float:
    """
    Presentation conversion of an entropy-like quantity held in nats.
    """
    return value / LN2 if units is Units.BITS else value
