import csv
import math
from typing import Dict, List

import pytest
from click.testing import CliRunner
from pytest_mock import MockerFixture

from weak_reality.cli import main
from weak_reality.tomography.counts import CountTable

LN2 = math.log(2)


@pytest.fixture
def cli() -> CliRunner:
    return CliRunner()


def parse(output: str) -> List[Dict[str, str]]:
    lines = output.splitlines()
    assert lines[0].startswith("# command=")
    return list(csv.DictReader(lines[1:]))


def test_sweep_strength_defaults(cli: CliRunner) -> None:
    result = cli.invoke(main, ["sweep-strength"])
    assert result.exit_code == 0, result.output
    rows = parse(result.output)
    assert len(rows) == 10
    assert float(rows[-1]["theta_deg"]) == 45.0
    assert float(rows[-1]["dR_exact"]) == pytest.approx(LN2, abs=1e-12)
    for row in rows:
        assert float(row["dR_exact"]) >= float(row["dR_bound"]) - 1e-10
        assert row["dR_tomo"] == ""
        assert row["dR_tomo_err"] == ""
        assert row["dI_tomo"] == ""
        assert row["dI_tomo_err"] == ""


def test_sweep_strength_in_bits(cli: CliRunner) -> None:
    nats = parse(cli.invoke(main, ["sweep-strength"]).output)
    bits = parse(cli.invoke(main, ["sweep-strength", "--units", "bits"]).output)
    for n, b in zip(nats, bits):
        assert float(b["dR_exact"]) == pytest.approx(
            float(n["dR_exact"]) / LN2, abs=1e-12
        )


def test_sweep_strength_with_tomography_is_reproducible(cli: CliRunner) -> None:
    args = ["sweep-strength", "--points", "3", "--shots", "5000", "--repeats", "2"]
    first = cli.invoke(main, args + ["--seed", "12"])
    second = cli.invoke(main, args + ["--seed", "12", "--workers", "2"])
    assert first.exit_code == 0, first.output
    assert first.output == second.output
    rows = parse(first.output)
    assert all(row["dR_tomo"] != "" for row in rows)
    assert all(row["dI_tomo_err"] != "" for row in rows)
    other = cli.invoke(main, args + ["--seed", "13"])
    assert other.output != first.output


def test_sweep_strength_to_file(cli: CliRunner, tmp_path) -> None:
    path = tmp_path / "sweep.csv"
    result = cli.invoke(main, ["sweep-strength", "--out", str(path)])
    assert result.exit_code == 0
    assert result.output == ""
    assert path.read_text() == cli.invoke(main, ["sweep-strength"]).output


def test_sweep_strength_with_noise(cli: CliRunner) -> None:
    result = cli.invoke(
        main, ["sweep-strength", "--noise-kind", "joint-loss", "--kappa0", "0.2"]
    )
    assert result.exit_code == 0
    rows = parse(result.output)
    assert float(rows[-1]["dI_context"]) < float(rows[-1]["dR_exact"]) - 1e-3


@pytest.mark.parametrize(
    "args",
    [
        ["sweep-strength", "--points", "1"],
        ["sweep-strength", "--theta-stop", "50"],
        ["sweep-strength", "--kappa0", "1.5"],
        ["sweep-strength", "--shots", "-1"],
        ["sweep-strength", "--noise-kind", "bogus"],
        ["sweep-mixing", "--p-start", "-0.1"],
        ["tomo-run", "--shots", "0"],
        ["verify", "--draws", "0"],
    ],
)
def test_usage_errors(cli: CliRunner, args: List[str]) -> None:
    result = cli.invoke(main, args)
    assert result.exit_code == 2


def test_sweep_mixing(cli: CliRunner) -> None:
    result = cli.invoke(main, ["sweep-mixing"])
    assert result.exit_code == 0
    rows = parse(result.output)
    assert len(rows) == 11
    assert float(rows[0]["dR_exact"]) == pytest.approx(LN2, abs=1e-12)
    assert float(rows[-1]["dR_exact"]) == pytest.approx(0.26877, abs=1e-4)


def test_sweep_mixing_symmetry(cli: CliRunner) -> None:
    result = cli.invoke(
        main, ["sweep-mixing", "--p-start", "0", "--p-stop", "1", "--points", "11"]
    )
    values = [float(row["dR_exact"]) for row in parse(result.output)]
    for low, high in zip(values, values[::-1]):
        assert low == pytest.approx(high, abs=1e-12)


def test_tomo_run(cli: CliRunner, tmp_path) -> None:
    path = tmp_path / "counts.csv"
    result = cli.invoke(
        main, ["tomo-run", "--shots", "20000", "--seed", "3", "--out", str(path)]
    )
    assert result.exit_code == 0, result.output
    assert "method=plin" in result.output
    counts = CountTable.read_csv(str(path))
    assert counts.shots == 20000
    assert counts.seed == 3
    assert counts.is_complete


def test_verify(cli: CliRunner) -> None:
    result = cli.invoke(main, ["verify", "--draws", "20"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert len(lines) == 9
    assert all(line.startswith("PASS") for line in lines)


def test_verify_with_loss(cli: CliRunner) -> None:
    result = cli.invoke(
        main, ["verify", "--draws", "20", "--noise-kind", "joint-loss"]
    )
    assert result.exit_code == 0, result.output
    assert result.output.count("EXPECTED-VIOLATION") == 2
    assert "FAIL" not in result.output


def test_verify_detects_a_miscalibrated_meter(
    cli: CliRunner, mocker: MockerFixture
) -> None:
    mocker.patch(
        "weak_reality.verify.strength_from_theta",
        lambda theta: 0.9 * (1.0 - math.cos(2.0 * theta)),
    )
    result = cli.invoke(main, ["verify", "--draws", "20"])
    assert result.exit_code == 1
    failed = [line for line in result.output.splitlines() if line.startswith("FAIL")]
    assert len(failed) == 1
    assert "circuit-map equivalence" in failed[0]
