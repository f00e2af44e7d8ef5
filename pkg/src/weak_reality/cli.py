import logging
from typing import Any, Callable

import click

from weak_reality.configuration import (
    Command,
    GridSpec,
    NoiseKind,
    NoiseScaling,
    NoiseSpec,
    ReconstructionMethod,
    RunConfig,
)
from weak_reality.errors import WeakRealityError
from weak_reality.events.violation_event import PropertyViolationEvent
from weak_reality.executors.default import DefaultExecutor
from weak_reality.measures.entropy import Units
from weak_reality.runner import SweepRunner, write_rows
from weak_reality.settings import (
    DEFAULT_KAPPA0,
    DEFAULT_RESAMPLE_REPEATS,
    DEFAULT_THETA_DEG,
    DEFAULT_TOMO_SHOTS,
)
from weak_reality.verify import PropertyOutcome, run_verification

_log: logging.Logger = logging.getLogger(__name__)

F = Callable[..., Any]


def _noise_options(fn: F) -> F:
    fn = click.option(
        "--scaling",
        type=click.Choice([s.value for s in NoiseScaling]),
        default=NoiseScaling.CONSTANT.value,
        help="How the loss strength follows epsilon [constant by default].",
    )(fn)
    fn = click.option(
        "--kappa0",
        type=float,
        default=DEFAULT_KAPPA0,
        help=f"Loss strength [{DEFAULT_KAPPA0} by default].",
    )(fn)
    return click.option(
        "--noise-kind",
        type=click.Choice([k.value for k in NoiseKind]),
        default=NoiseKind.NONE.value,
        help="Loss applied after the coupling [none by default].",
    )(fn)


def _tomography_options(shots: int) -> Callable[[F], F]:
    def decorate(fn: F) -> F:
        for option in reversed(
            [
                click.option(
                    "--shots",
                    type=int,
                    default=shots,
                    help=f"Shots per tomography setting, 0 for exact only [{shots}].",
                ),
                click.option("--seed", type=int, default=0, help="Seed [0]."),
                click.option(
                    "--repeats",
                    type=int,
                    default=DEFAULT_RESAMPLE_REPEATS,
                    help="Tomography repeats behind each error column.",
                ),
                click.option(
                    "--method",
                    type=click.Choice([m.value for m in ReconstructionMethod]),
                    default=ReconstructionMethod.PROJECTED_LINEAR_INVERSION.value,
                    help="Reconstruction method [plin by default].",
                ),
                click.option(
                    "--units",
                    type=click.Choice([u.value for u in Units]),
                    default=Units.NATS.value,
                    help="Entropy units of the output [nats by default].",
                ),
                click.option(
                    "--workers",
                    type=int,
                    default=1,
                    help="Threads evaluating grid points [1 by default].",
                ),
                click.option(
                    "--out",
                    type=click.Path(dir_okay=False, writable=True),
                    default=None,
                    help="Output CSV path [stdout by default].",
                ),
            ]
        ):
            fn = option(fn)
        return fn

    return decorate


def _noise(noise_kind: str, kappa0: float, scaling: str) -> NoiseSpec:
    return NoiseSpec(NoiseKind(noise_kind), kappa0, NoiseScaling(scaling))


def _config(command: Command, **kwargs: Any) -> RunConfig:
    noise = _noise(
        kwargs.pop("noise_kind"), kwargs.pop("kappa0"), kwargs.pop("scaling")
    )
    method = ReconstructionMethod(kwargs.pop("method"))
    units = Units(kwargs.pop("units"))
    cfg = RunConfig(command=command, noise=noise, method=method, units=units, **kwargs)
    try:
        cfg.validate()
    except WeakRealityError as e:
        raise click.UsageError(str(e)) from e
    return cfg


def _run_sweep(cfg: RunConfig) -> None:
    runner = SweepRunner(executor=DefaultExecutor(cfg.workers))
    try:
        rows = runner.rows(cfg)
    except WeakRealityError as e:
        raise click.UsageError(str(e)) from e
    with click.open_file(cfg.out or "-", "w") as stream:
        write_rows(stream, cfg, rows)


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    help="Logging level [WARNING by default].",
)
def main(log_level: str) -> None:
    """
    Weak measurement of a qubit: reality and information changes, exact
    and from simulated tomography.
    """
    logging.basicConfig(
        level=log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@main.command("sweep-strength")
@click.option("--theta-start", type=float, default=0.0, help="First angle in degrees.")
@click.option("--theta-stop", type=float, default=45.0, help="Last angle in degrees.")
@click.option("--points", type=int, default=10, help="Grid points [10 by default].")
@click.option("--p", "mixing_p", type=float, default=1.0, help="Meter weight p.")
@_noise_options
@_tomography_options(shots=0)
def cmd_sweep_strength(
    theta_start: float, theta_stop: float, points: int, **kwargs: Any
) -> None:
    """
    Reality change, its bound and the information changes against the
    measurement strength.
    """
    cfg = _config(
        Command.SWEEP_STRENGTH,
        theta_grid=GridSpec(theta_start, theta_stop, points),
        **kwargs,
    )
    _run_sweep(cfg)


@main.command("sweep-mixing")
@click.option("--p-start", type=float, default=0.5, help="First meter weight.")
@click.option("--p-stop", type=float, default=1.0, help="Last meter weight.")
@click.option("--points", type=int, default=11, help="Grid points [11 by default].")
@click.option(
    "--theta-deg",
    "theta_fixed_deg",
    type=float,
    default=DEFAULT_THETA_DEG,
    help=f"Meter angle in degrees [{DEFAULT_THETA_DEG} by default].",
)
@_noise_options
@_tomography_options(shots=0)
def cmd_sweep_mixing(p_start: float, p_stop: float, points: int, **kwargs: Any) -> None:
    """
    Reality change against the entropy of a mixed meter at a fixed angle.
    """
    cfg = _config(
        Command.SWEEP_MIXING, p_grid=GridSpec(p_start, p_stop, points), **kwargs
    )
    _run_sweep(cfg)


@main.command("tomo-run")
@click.option(
    "--theta-deg",
    "theta_fixed_deg",
    type=float,
    default=DEFAULT_THETA_DEG,
    help=f"Meter angle in degrees [{DEFAULT_THETA_DEG} by default].",
)
@click.option("--p", "mixing_p", type=float, default=1.0, help="Meter weight p.")
@_noise_options
@_tomography_options(shots=DEFAULT_TOMO_SHOTS)
def cmd_tomo_run(**kwargs: Any) -> None:
    """
    Simulates one tomography dataset of the circuit output, writes its
    counts to --out and prints the reconstruction summary.
    """
    cfg = _config(Command.TOMO_RUN, **kwargs)
    runner = SweepRunner()
    try:
        summary = runner.tomo_run(cfg)
    except WeakRealityError as e:
        raise click.UsageError(str(e)) from e
    if cfg.out:
        summary.counts.write_csv(cfg.out)
    click.echo(summary.render(cfg.units))


def _log_violation(outcome: PropertyOutcome) -> None:
    _log.info(f"{outcome.name}: {outcome.status.value}, {outcome.detail}")


@main.command("verify")
@_noise_options
@click.option("--seed", type=int, default=0, help="Seed [0 by default].")
@click.option("--draws", type=int, default=200, help="Random draws per property.")
@click.pass_context
def cmd_verify(
    ctx: click.Context,
    noise_kind: str,
    kappa0: float,
    scaling: str,
    seed: int,
    draws: int,
) -> None:
    """
    Runs the property suite; exits with 1 when any property fails.
    """
    noise = _noise(noise_kind, kappa0, scaling)
    try:
        noise.validate()
    except WeakRealityError as e:
        raise click.UsageError(str(e)) from e
    if seed < 0 or draws < 1:
        raise click.UsageError("seed must be >= 0 and draws >= 1")
    on_violation = PropertyViolationEvent()
    on_violation += _log_violation
    report = run_verification(
        noise=noise, seed=seed, draws=draws, on_violation=on_violation
    )
    click.echo(report.render())
    if not report.passed:
        ctx.exit(1)
