"""
Two-qubit Pauli-product tomography data: the nine measurement settings,
their outcome projectors, and the tables of counts they produce.

Outcomes of a setting are ordered (++, +-, -+, --), system first, where
+ and - are the +1 and -1 eigenvalues of the measured Pauli operator.
"""

import csv
import itertools
import logging
from functools import partial
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from weak_reality.errors import IncompleteData, InvalidDimension, OutOfRange
from weak_reality.executors.default import DefaultExecutor
from weak_reality.interfaces.executor import GridExecutor
from weak_reality.qcore.linalg import ComplexMatrix
from weak_reality.qcore.states import PAULI_I, DensityMatrix, PauliBasis

_log: logging.Logger = logging.getLogger(__name__)

CSV_HEADER = ["setting_s", "setting_a", "n_pp", "n_pm", "n_mp", "n_mm", "shots", "seed"]

# Allowed mismatch between a row total and the shots, for real-valued tables.
_ROW_SUM_TOL = 1e-9

# Born probabilities below this are treated as exactly zero.
_ZERO_PROBABILITY = 1e-15


class MeasurementSetting(NamedTuple):
    basis_s: PauliBasis
    basis_a: PauliBasis

    @property
    def label(self) -> str:
        return f"{self.basis_s.name}{self.basis_a.name}"


ALL_SETTINGS: Tuple[MeasurementSetting, ...] = tuple(
    MeasurementSetting(s, a) for s, a in itertools.product(PauliBasis, PauliBasis)
)


def _local_projectors(basis: PauliBasis) -> Tuple[ComplexMatrix, ComplexMatrix]:
    sigma = basis.matrix
    return (PAULI_I + sigma) / 2.0, (PAULI_I - sigma) / 2.0


def setting_projectors(setting: MeasurementSetting) -> List[ComplexMatrix]:
    """
    The four joint outcome projectors of a setting, in (++, +-, -+, --)
    order.
    """
    return [
        np.kron(p_s, p_a)
        for p_s, p_a in itertools.product(
            _local_projectors(setting.basis_s), _local_projectors(setting.basis_a)
        )
    ]


def born_probabilities(
    rho: DensityMatrix, setting: MeasurementSetting
) -> npt.NDArray[np.float64]:
    if rho.dim != 4:
        raise InvalidDimension(f"Tomography needs a two-qubit state, got dim {rho.dim}")
    probs = np.array([rho.expectation(p) for p in setting_projectors(setting)])
    # Rounding residue of impossible outcomes
    probs[probs < _ZERO_PROBABILITY] = 0.0
    return probs / probs.sum()


class CountTable:
    """
    Outcome counts per measurement setting, all taken with the same number
    of shots. Tables built from exact probabilities hold real-valued
    counts and have no seed.
    """

    __slots__ = ("_rows", "_shots", "_seed")

    def __init__(
        self,
        rows: Mapping[MeasurementSetting, Sequence[float]],
        shots: int,
        seed: Optional[int] = None,
    ) -> None:
        if shots < 1:
            raise OutOfRange("shots", shots, "shots must be >= 1")
        self._rows: Dict[MeasurementSetting, npt.NDArray[np.float64]] = {}
        for setting in ALL_SETTINGS:
            if setting not in rows:
                continue
            row = np.asarray(rows[setting], dtype=float)
            if row.shape != (4,) or np.any(row < 0.0):
                raise OutOfRange(
                    "counts",
                    float(row.sum()),
                    f"Bad counts for setting {setting.label}",
                )
            if abs(row.sum() - shots) > _ROW_SUM_TOL * shots:
                raise OutOfRange(
                    "counts",
                    float(row.sum()),
                    f"Counts for setting {setting.label} do not sum to {shots}",
                )
            row.setflags(write=False)
            self._rows[setting] = row
        self._shots = shots
        self._seed = seed

    @property
    def shots(self) -> int:
        return self._shots

    @property
    def seed(self) -> Optional[int]:
        return self._seed

    @property
    def settings(self) -> List[MeasurementSetting]:
        return list(self._rows)

    @property
    def is_complete(self) -> bool:
        return len(self._rows) == len(ALL_SETTINGS)

    def check_complete(self) -> None:
        missing = [s.label for s in ALL_SETTINGS if s not in self._rows]
        if missing:
            raise IncompleteData(f"Missing settings: {', '.join(missing)}")

    def counts(self, setting: MeasurementSetting) -> npt.NDArray[np.float64]:
        try:
            return self._rows[setting]
        except KeyError:
            raise IncompleteData(f"No counts for setting {setting.label}") from None

    def frequencies(self, setting: MeasurementSetting) -> npt.NDArray[np.float64]:
        return self.counts(setting) / self._shots

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for setting, row in self._rows.items():
                writer.writerow(
                    [
                        setting.basis_s.name,
                        setting.basis_a.name,
                        *(_format_count(n) for n in row),
                        self._shots,
                        "" if self._seed is None else self._seed,
                    ]
                )

    @classmethod
    def read_csv(cls, path: str) -> "CountTable":
        rows: Dict[MeasurementSetting, List[float]] = {}
        shots: Optional[int] = None
        seed: Optional[int] = None
        with open(path, newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != CSV_HEADER:
                raise IncompleteData(f"Unexpected count table header in {path}")
            for record in reader:
                setting = MeasurementSetting(
                    PauliBasis[record["setting_s"]], PauliBasis[record["setting_a"]]
                )
                rows[setting] = [
                    float(record[k]) for k in ("n_pp", "n_pm", "n_mp", "n_mm")
                ]
                shots = int(record["shots"])
                seed = int(record["seed"]) if record["seed"] else None
        if shots is None:
            raise IncompleteData(f"Count table {path} has no rows")
        return cls(rows, shots, seed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CountTable):
            return NotImplemented
        return (
            self._shots == other._shots
            and self._seed == other._seed
            and self._rows.keys() == other._rows.keys()
            and all(
                np.array_equal(row, other._rows[s]) for s, row in self._rows.items()
            )
        )

    def __repr__(self) -> str:
        return (
            f"CountTable(settings={len(self._rows)}, shots={self._shots}, "
            f"seed={self._seed})"
        )


def _format_count(n: float) -> str:
    return str(int(n)) if float(n).is_integer() else repr(float(n))


def setting_generator(seed: int, stream: int, index: int) -> np.random.Generator:
    """
    Independent generator for one setting of one dataset. Stream r of a
    seed is the r-th resampled dataset.
    """
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream, index)))
    )


def _sample_setting(
    rho: DensityMatrix, shots: int, seed: int, stream: int, index: int
) -> npt.NDArray[np.int64]:
    probs = born_probabilities(rho, ALL_SETTINGS[index])
    return setting_generator(seed, stream, index).multinomial(shots, probs)


def simulate_counts(
    rho: DensityMatrix,
    shots: int,
    seed: int,
    stream: int = 0,
    executor: Optional[GridExecutor] = None,
) -> CountTable:
    """
    Samples every setting from its exact Born probabilities. The table
    depends only on (rho, shots, seed, stream).
    """
    if shots < 1:
        raise OutOfRange("shots", shots, "shots must be >= 1")
    if seed < 0:
        raise OutOfRange("seed", seed, "seed must be >= 0")
    if stream < 0:
        raise OutOfRange("stream", stream, "stream must be >= 0")
    executor = executor or DefaultExecutor()
    rows = executor.map(
        partial(_sample_setting, rho, shots, seed, stream), range(len(ALL_SETTINGS))
    )
    _log.debug(f"Simulated {shots} shots per setting, seed={seed}, stream={stream}")
    return CountTable(dict(zip(ALL_SETTINGS, rows)), shots, seed)


def expected_counts(rho: DensityMatrix, shots: int = 1) -> CountTable:
    """
    The infinite-statistics table: shots times the exact probabilities.
    """
    return CountTable(
        {s: shots * born_probabilities(rho, s) for s in ALL_SETTINGS}, shots
    )
