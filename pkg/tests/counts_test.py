import numpy as np
import pytest

from weak_reality.errors import IncompleteData, InvalidDimension, OutOfRange
from weak_reality.executors.default import DefaultExecutor
from weak_reality.qcore.states import BELL_PHI_PLUS, DensityMatrix, PauliBasis
from weak_reality.tomography.counts import (
    ALL_SETTINGS,
    CSV_HEADER,
    CountTable,
    MeasurementSetting,
    born_probabilities,
    expected_counts,
    setting_projectors,
    simulate_counts,
)
from weak_reality.weakmeas.experiment import run_experiment
from weak_reality.weakmeas.meter import THETA_MAX, MeterSpec

XX = MeasurementSetting(PauliBasis.X, PauliBasis.X)
ZZ = MeasurementSetting(PauliBasis.Z, PauliBasis.Z)


@pytest.fixture
def bell() -> DensityMatrix:
    return BELL_PHI_PLUS.density()


def test_settings() -> None:
    assert len(ALL_SETTINGS) == 9
    assert [s.label for s in ALL_SETTINGS[:3]] == ["XX", "XY", "XZ"]
    assert ALL_SETTINGS[-1] == ZZ


@pytest.mark.parametrize("setting", ALL_SETTINGS)
def test_setting_projectors(setting: MeasurementSetting) -> None:
    projectors = setting_projectors(setting)
    assert np.allclose(sum(projectors), np.eye(4), atol=1e-12)
    for i, p in enumerate(projectors):
        assert np.allclose(p @ p, p, atol=1e-12)
        for q in projectors[i + 1 :]:
            assert np.max(np.abs(p @ q)) <= 1e-12


def test_born_probabilities(bell: DensityMatrix) -> None:
    assert born_probabilities(bell, ZZ).tolist() == pytest.approx([0.5, 0, 0, 0.5])
    yy = MeasurementSetting(PauliBasis.Y, PauliBasis.Y)
    assert born_probabilities(bell, yy).tolist() == pytest.approx([0, 0.5, 0.5, 0])
    with pytest.raises(InvalidDimension):
        born_probabilities(DensityMatrix.maximally_mixed(2), ZZ)


def test_impossible_outcomes_have_zero_probability() -> None:
    # |+> coupled at 16 degrees: X on the system pins the ancilla Z outcome
    rho = run_experiment(None, MeterSpec.from_degrees(16.0)).rho_sa_out
    xz = MeasurementSetting(PauliBasis.X, PauliBasis.Z)
    probs = born_probabilities(rho, xz)
    assert probs[1] == 0.0
    assert probs[2] == 0.0
    assert probs.sum() == pytest.approx(1.0, abs=1e-15)
    assert expected_counts(rho).frequencies(xz)[1:3].tolist() == [0.0, 0.0]


def test_simulation_is_deterministic(bell: DensityMatrix) -> None:
    a = simulate_counts(bell, 1000, seed=42)
    b = simulate_counts(bell, 1000, seed=42)
    assert a == b
    assert a.seed == 42
    assert a.shots == 1000
    assert simulate_counts(bell, 1000, seed=43) != a
    assert simulate_counts(bell, 1000, seed=42, stream=1) != a


def test_simulation_does_not_depend_on_workers(bell: DensityMatrix) -> None:
    serial = simulate_counts(bell, 500, seed=7)
    parallel = simulate_counts(bell, 500, seed=7, executor=DefaultExecutor(3))
    assert parallel == serial


def test_forbidden_outcomes_never_occur(bell: DensityMatrix) -> None:
    counts = simulate_counts(bell, 10_000, seed=1)
    for setting in (XX, ZZ):
        row = counts.counts(setting)
        assert row[1] == 0
        assert row[2] == 0
        assert row.sum() == 10_000


def test_uniform_state_frequencies() -> None:
    shots = 1_000_000
    counts = simulate_counts(DensityMatrix.maximally_mixed(4), shots, seed=5)
    sigma = np.sqrt(0.25 * 0.75 / shots)
    for setting in ALL_SETTINGS:
        assert np.all(np.abs(counts.frequencies(setting) - 0.25) <= 5 * sigma)


def test_frequencies_follow_born_rule() -> None:
    rho = run_experiment(None, MeterSpec(THETA_MAX)).rho_sa_out
    shots = 100_000
    counts = simulate_counts(rho, shots, seed=3)
    probs = born_probabilities(rho, XX)
    sigma = np.sqrt(probs * (1 - probs) / shots)
    assert np.all(np.abs(counts.frequencies(XX) - probs) <= 5 * sigma + 1e-12)


def test_expected_counts(bell: DensityMatrix) -> None:
    table = expected_counts(bell, shots=10)
    assert table.seed is None
    assert table.counts(ZZ).tolist() == pytest.approx([5.0, 0.0, 0.0, 5.0])
    assert table.is_complete


def test_incomplete_table() -> None:
    table = CountTable({ZZ: [3, 0, 0, 7]}, shots=10)
    assert not table.is_complete
    assert table.settings == [ZZ]
    assert table.frequencies(ZZ).tolist() == [0.3, 0.0, 0.0, 0.7]
    with pytest.raises(IncompleteData):
        table.check_complete()
    with pytest.raises(IncompleteData):
        table.counts(XX)


def test_invalid_tables() -> None:
    with pytest.raises(OutOfRange):
        CountTable({ZZ: [3, 0, 0, 6]}, shots=10)
    with pytest.raises(OutOfRange):
        CountTable({ZZ: [11, -1, 0, 0]}, shots=10)
    with pytest.raises(OutOfRange):
        CountTable({ZZ: [10, 0, 0]}, shots=10)
    with pytest.raises(OutOfRange):
        CountTable({}, shots=0)


def test_invalid_simulation_arguments(bell: DensityMatrix) -> None:
    with pytest.raises(OutOfRange):
        simulate_counts(bell, 0, seed=1)
    with pytest.raises(OutOfRange):
        simulate_counts(bell, 10, seed=-1)
    with pytest.raises(OutOfRange) as excinfo:
        simulate_counts(bell, 10, seed=1, stream=-2)
    assert excinfo.value.name == "stream"
    assert excinfo.value.value == -2


def test_csv(tmp_path, bell: DensityMatrix) -> None:
    path = str(tmp_path / "counts.csv")
    table = simulate_counts(bell, 100, seed=9)
    table.write_csv(path)

    with open(path) as f:
        lines = f.read().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 10
    assert lines[-1].startswith("Z,Z,")
    assert lines[-1].endswith(",100,9")
    assert CountTable.read_csv(path) == table


def test_csv_without_seed(tmp_path, bell: DensityMatrix) -> None:
    path = str(tmp_path / "expected.csv")
    table = expected_counts(bell, shots=4)
    table.write_csv(path)
    loaded = CountTable.read_csv(path)
    assert loaded.seed is None
    assert loaded == table


def test_csv_with_wrong_header(tmp_path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(IncompleteData):
        CountTable.read_csv(str(path))
