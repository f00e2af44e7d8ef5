import gc
import math
import time
from typing import Callable

import click

from weak_reality.configuration import NoiseSpec, ReconstructionMethod
from weak_reality.executors.default import DefaultExecutor
from weak_reality.tomography.counts import simulate_counts
from weak_reality.tomography.reconstruction import reconstruct
from weak_reality.verify import run_verification
from weak_reality.weakmeas.experiment import run_experiment, sweep_strength
from weak_reality.weakmeas.meter import MeterSpec


class Benchmark:
    __slots__ = (
        "points",
        "workers",
        "runs",
        "shots",
        "draws",
        "with_gc",
    )

    def __init__(
        self,
        points: int,
        workers: int,
        runs: int,
        shots: int,
        draws: int,
        with_gc: bool,
    ) -> None:
        self.points = points
        self.workers = workers
        self.runs = runs
        self.shots = shots
        self.draws = draws
        self.with_gc = with_gc

    def _time(self, name: str, ops: int, fn: Callable[[], None]) -> None:
        start_time = time.perf_counter()
        for _ in range(self.runs):
            fn()
        elapsed = time.perf_counter() - start_time
        total = self.runs * ops
        print(
            f"{name}: {total} ops in {elapsed:.2f}s / "
            f"{elapsed / total * 1_000:.3f} ms/op"
        )

    def sweep(self) -> None:
        grid = [i * (math.pi / 4) / (self.points - 1) for i in range(self.points)]
        executor = DefaultExecutor(self.workers)
        sweep_strength(None, grid, NoiseSpec.joint_loss(), executor=executor)

    def reconstructions(self, method: ReconstructionMethod) -> Callable[[], None]:
        rho = run_experiment(None, MeterSpec.from_degrees(16.0)).rho_sa_out
        counts = simulate_counts(rho, self.shots, seed=0)

        def run() -> None:
            reconstruct(counts, method)

        return run

    def verify(self) -> None:
        run_verification(draws=self.draws)

    def run(self) -> None:
        print("=== Starting benchmark ===")
        print(f" - points: {self.points} ({self.workers} workers)")
        print(f" - runs: {self.runs}")
        print(f" - shots per setting: {self.shots}")
        print(f" - GC: {'enabled' if self.with_gc else 'disabled'}")
        print()
        if not self.with_gc:
            gc.disable()
        self._time("Strength sweep points", self.points, self.sweep)
        for method in ReconstructionMethod:
            if method is ReconstructionMethod.LINEAR_INVERSION:
                continue
            label = f"Reconstruction ({method.value})"
            self._time(label, 1, self.reconstructions(method))
        self._time("Property suite", 1, self.verify)
        if not self.with_gc:
            gc.enable()
        print()
        print("=== Benchmark finished ===")


@click.command()
@click.option("--points", default=46, help="Strength grid points [46 by default].")
@click.option("--workers", default=1, help="Number of threads [1 by default].")
@click.option("--runs", default=3, help="Number of runs [3 by default].")
@click.option(
    "--shots",
    default=100_000,
    help="Shots per tomography setting [100K by default].",
)
@click.option("--draws", default=50, help="Property suite draws [50 by default].")
@click.option(
    "--gc/--no-gc",
    is_flag=True,
    default=False,
    help="Enable/disable GC (disable by default).",
)
def cli(
    points: int = 46,
    workers: int = 1,
    runs: int = 3,
    shots: int = 100_000,
    draws: int = 50,
    gc: bool = False,
) -> None:
    Benchmark(
        points=points,
        workers=workers,
        runs=runs,
        shots=shots,
        draws=draws,
        with_gc=gc,
    ).run()


if __name__ == "__main__":
    cli()
