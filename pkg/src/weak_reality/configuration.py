import math
from enum import Enum
from typing import List, NamedTuple, Optional

import numpy as np

from weak_reality.errors import OutOfRange
from weak_reality.measures.entropy import Units
from weak_reality.settings import DEFAULT_KAPPA0, DEFAULT_THETA_DEG


class NoiseKind(Enum):
    """
    Non-unitary loss applied to the joint state after the coupling.
    """

    # Ideal, reversible coupling
    NONE = "none"

    # Phase damping of the system qubit: coherences scale by (1 - kappa)
    SYSTEM_DEPHASING = "dephasing"

    # rho_S -> (1 - kappa) rho_S + kappa I/2 on the system qubit
    SYSTEM_DEPOLARIZING = "depolarizing"

    # System depolarizing whose strength always grows as kappa0 * epsilon,
    # whatever the configured scaling: loss that increases with the
    # measurement strength
    JOINT_LOSS_SCALING = "joint-loss"


class NoiseScaling(Enum):
    CONSTANT = "constant"
    LINEAR_IN_EPSILON = "linear"


class NoiseSpec(NamedTuple):
    kind: NoiseKind = NoiseKind.NONE
    kappa0: float = DEFAULT_KAPPA0
    scaling: NoiseScaling = NoiseScaling.CONSTANT

    @classmethod
    def joint_loss(cls, kappa0: float = DEFAULT_KAPPA0) -> "NoiseSpec":
        return cls(NoiseKind.JOINT_LOSS_SCALING, kappa0, NoiseScaling.LINEAR_IN_EPSILON)

    @property
    def is_noiseless(self) -> bool:
        return self.kind is NoiseKind.NONE or self.kappa0 == 0.0

    def validate(self) -> None:
        if not 0.0 <= self.kappa0 <= 1.0:
            raise OutOfRange("kappa0", self.kappa0, "kappa0 must lie in [0, 1]")

    def kappa(self, epsilon: float) -> float:
        """
        Effective channel strength at measurement strength epsilon.
        """
        if self.kind is NoiseKind.NONE:
            return 0.0
        if (
            self.kind is NoiseKind.JOINT_LOSS_SCALING
            or self.scaling is NoiseScaling.LINEAR_IN_EPSILON
        ):
            return self.kappa0 * epsilon
        return self.kappa0


class GridSpec(NamedTuple):
    """
    Evenly spaced grid from start to stop inclusive.
    """

    start: float
    stop: float
    points: int

    def validate(self, name: str = "grid") -> None:
        if self.points < 2:
            raise OutOfRange(
                f"{name}.points", self.points, f"{name} needs at least 2 points"
            )

    def values(self) -> List[float]:
        return [float(x) for x in np.linspace(self.start, self.stop, self.points)]

    def radians(self) -> List[float]:
        return [math.radians(x) for x in self.values()]


class ReconstructionMethod(Enum):
    LINEAR_INVERSION = "lin"
    PROJECTED_LINEAR_INVERSION = "plin"
    MLE = "mle"


class Command(Enum):
    SWEEP_STRENGTH = "sweep-strength"
    SWEEP_MIXING = "sweep-mixing"
    TOMO_RUN = "tomo-run"
    VERIFY = "verify"


class RunConfig(NamedTuple):
    """
    Everything one command line invocation needs. Angles are in degrees.
    """

    command: Command
    theta_grid: GridSpec = GridSpec(0.0, 45.0, 10)
    p_grid: GridSpec = GridSpec(0.5, 1.0, 11)
    theta_fixed_deg: float = DEFAULT_THETA_DEG
    mixing_p: float = 1.0
    noise: NoiseSpec = NoiseSpec()
    # 0 means exact evaluation only, no simulated tomography
    shots: int = 0
    seed: int = 0
    repeats: int = 5
    method: ReconstructionMethod = ReconstructionMethod.PROJECTED_LINEAR_INVERSION
    units: Units = Units.NATS
    workers: int = 1
    out: Optional[str] = None

    def validate(self) -> None:
        self.theta_grid.validate("theta grid")
        self.p_grid.validate("p grid")
        self.noise.validate()
        for theta in (*self.theta_grid.values(), self.theta_fixed_deg):
            if not 0.0 <= theta <= 45.0:
                raise OutOfRange("theta_deg", theta, "Angles must lie in [0, 45] deg")
        for p in (*self.p_grid.values(), self.mixing_p):
            if not 0.0 <= p <= 1.0:
                raise OutOfRange("p", p, "Meter weights must lie in [0, 1]")
        if self.shots < 0:
            raise OutOfRange("shots", self.shots, "shots must be >= 0")
        if self.seed < 0:
            raise OutOfRange("seed", self.seed, "seed must be >= 0")
        if self.repeats < 1:
            raise OutOfRange("repeats", self.repeats, "repeats must be >= 1")
        if self.workers < 1:
            raise OutOfRange("workers", self.workers, "workers must be >= 1")

    def describe(self) -> str:
        """
        Single line rendering of the configuration, used as the CSV
        comment header.
        """
        noise = self.noise
        parts = [
            f"command={self.command.value}",
            f"theta_start={self.theta_grid.start!r}",
            f"theta_stop={self.theta_grid.stop!r}",
            f"points={self.theta_grid.points}",
            f"p_start={self.p_grid.start!r}",
            f"p_stop={self.p_grid.stop!r}",
            f"p_points={self.p_grid.points}",
            f"theta_deg={self.theta_fixed_deg!r}",
            f"p={self.mixing_p!r}",
            f"noise_kind={noise.kind.value}",
            f"kappa0={noise.kappa0!r}",
            f"scaling={noise.scaling.value}",
            f"shots={self.shots}",
            f"seed={self.seed}",
            f"repeats={self.repeats}",
            f"method={self.method.value}",
            f"units={self.units.value}",
        ]
        return " ".join(parts)
