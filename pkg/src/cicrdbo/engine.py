"""Run orchestration: single runs, seeded batches, sweeps, and export."""

import csv
import dataclasses
import json
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .chaos import init_population
from .crisscross import CrossoverParams, apply_crisscross
from .dbo import DboParams, SwarmState, dbo_step
from .objectives import Objective

ALGORITHMS = ("dbo", "cicrdbo")
SWEEPABLE = ("pop_size", "max_iters", "k", "b_roll", "ph", "pv")


class ConfigurationError(ValueError):
    """Invalid run configuration rejected before any work."""


@dataclass(frozen=True)
class OptimizerConfig:
    algorithm: str = "cicrdbo"
    pop_size: int = 30
    max_iters: int = 500
    seed: int = 0
    dbo: DboParams = field(default_factory=DboParams)
    crossover: CrossoverParams = field(default_factory=CrossoverParams)
    init: Optional[str] = None  # None resolves to circle (cicrdbo) / uniform (dbo)

    def validate(self) -> "OptimizerConfig":
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {self.algorithm!r}")
        if self.pop_size < 2:
            raise ConfigurationError("pop_size must be >= 2")
        if self.max_iters < 1:
            raise ConfigurationError("max_iters must be >= 1")
        init = self.init
        if init is None:
            init = "circle" if self.algorithm == "cicrdbo" else "uniform"
        if init not in ("circle", "uniform"):
            raise ConfigurationError(f"unknown init scheme {init!r}")
        if self.algorithm == "cicrdbo" and init != "circle":
            raise ConfigurationError("cicrdbo requires circle initialization")
        return replace(self, init=init)

    def fingerprint(self) -> str:
        c = self.validate()
        return (
            f"{c.algorithm}:pop={c.pop_size}:iters={c.max_iters}:seed={c.seed}"
            f":init={c.init}:k={c.dbo.k}:b={c.dbo.b_roll}:s={c.dbo.s}"
            f":ph={c.crossover.ph}:pv={c.crossover.pv}"
        )


@dataclass
class RunRecord:
    fingerprint: str
    objective: str
    trace: list[tuple[int, float]]          # (iteration, best-so-far), length max_iters + 1
    final_best_position: np.ndarray
    final_best_fitness: float
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "fingerprint": self.fingerprint,
            "objective": self.objective,
            "trace": [[int(i), float(f)] for i, f in self.trace],
            "final_best_position": [float(v) for v in self.final_best_position],
            "final_best_fitness": float(self.final_best_fitness),
            "wall_time": float(self.wall_time),
        }


@dataclass(frozen=True)
class BatchStats:
    n_runs: int
    best: float
    mean: float
    std: float   # population standard deviation

    @classmethod
    def from_finals(cls, finals: Sequence[float]) -> "BatchStats":
        arr = np.asarray(finals, dtype=float)
        return cls(n_runs=arr.size, best=float(arr.min()), mean=float(arr.mean()),
                   std=float(arr.std()))


@dataclass(frozen=True)
class StatsRow:
    """One line of the best/mean/std results table."""

    algorithm: str
    objective: str
    dim: int
    pop: int
    iters: int
    runs: int
    best: float
    mean: float
    std: float


def initialize_state(
    config: OptimizerConfig,
    objective: Objective,
    rng: np.random.Generator,
    seed_individuals: Optional[np.ndarray] = None,
) -> SwarmState:
    """Build the initial swarm per the configured scheme.

    `seed_individuals` rows, if given, overwrite the first initial
    positions (used to inject known-good starting points).
    """
    box = objective.box
    if config.init == "circle":
        x0 = rng.random()
        while x0 == 0.0:  # seed must lie in the open interval
            x0 = rng.random()
        positions = init_population(box, config.pop_size, x0)
    else:
        positions = rng.uniform(box.lower, box.upper, size=(config.pop_size, box.dim))
    if seed_individuals is not None:
        inject = np.atleast_2d(np.asarray(seed_individuals, dtype=float))
        positions[: inject.shape[0]] = box.clamp(inject)
    return SwarmState.from_positions(positions, objective, config.dbo, rng=rng)


def run_optimizer(
    config: OptimizerConfig,
    objective: Objective,
    seed_individuals: Optional[np.ndarray] = None,
) -> RunRecord:
    """One seeded run; returns the full best-so-far trace."""
    config = config.validate()
    rng = np.random.default_rng(config.seed)
    start = time.perf_counter()
    state = initialize_state(config, objective, rng, seed_individuals)
    trace = [(0, state.best_fitness)]
    for _ in range(config.max_iters):
        dbo_step(state, objective, config.dbo, rng, config.max_iters)
        if config.algorithm == "cicrdbo":
            apply_crisscross(state, objective, config.crossover, rng)
        trace.append((state.t, state.best_fitness))
    return RunRecord(
        fingerprint=config.fingerprint(),
        objective=objective.name,
        trace=trace,
        final_best_position=state.best_position.copy(),
        final_best_fitness=state.best_fitness,
        wall_time=time.perf_counter() - start,
    )


def run_batch(
    config: OptimizerConfig,
    objective: Objective,
    n_runs: int,
) -> tuple[BatchStats, list[RunRecord]]:
    """n_runs independent runs with consecutive seeds seed, seed+1, ..."""
    if n_runs < 1:
        raise ConfigurationError("n_runs must be >= 1")
    config = config.validate()
    records = [
        run_optimizer(replace(config, seed=config.seed + i), objective)
        for i in range(n_runs)
    ]
    stats = BatchStats.from_finals([r.final_best_fitness for r in records])
    return stats, records


def _with_param(config: OptimizerConfig, param: str, value) -> OptimizerConfig:
    if param == "pop_size":
        return replace(config, pop_size=int(value))
    if param == "max_iters":
        return replace(config, max_iters=int(value))
    if param == "k":
        return replace(config, dbo=replace(config.dbo, k=float(value)))
    if param == "b_roll":
        return replace(config, dbo=replace(config.dbo, b_roll=float(value)))
    if param == "ph":
        return replace(config, crossover=replace(config.crossover, ph=float(value)))
    if param == "pv":
        return replace(config, crossover=replace(config.crossover, pv=float(value)))
    raise ConfigurationError(f"unknown sweep parameter {param!r}; choose from {SWEEPABLE}")


def sweep(
    base: OptimizerConfig,
    objective: Objective,
    param: str,
    values: Sequence,
    n_runs: int,
) -> list[tuple[object, BatchStats]]:
    """One batch per value of the swept parameter, all else fixed."""
    if param not in SWEEPABLE:
        raise ConfigurationError(f"unknown sweep parameter {param!r}; choose from {SWEEPABLE}")
    table = []
    for v in values:
        try:
            cfg = _with_param(base, param, v).validate()
        except ValueError as e:
            raise ConfigurationError(f"invalid value {v!r} for {param}: {e}") from e
        stats, _ = run_batch(cfg, objective, n_runs)
        table.append((v, stats))
    return table


# ---------------------------------------------------------------------------
# Export. str() of a float in Python 3 is the shortest round-trip form,
# so CSV and JSON both preserve full precision.

def export_stats(rows: Sequence[StatsRow], path, fmt: str = "csv") -> None:
    path = Path(path)
    try:
        if fmt == "csv":
            with path.open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["algorithm", "objective", "dim", "pop", "iters", "runs",
                            "best", "mean", "std"])
                for r in rows:
                    w.writerow([r.algorithm, r.objective, r.dim, r.pop, r.iters, r.runs,
                                r.best, r.mean, r.std])
        elif fmt == "json":
            with path.open("w") as fh:
                json.dump([dataclasses.asdict(r) for r in rows], fh, indent=2)
        else:
            raise ConfigurationError(f"unknown export format {fmt!r}")
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e


def export_trace(record: RunRecord, path, fmt: str = "csv") -> None:
    path = Path(path)
    try:
        if fmt == "csv":
            with path.open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["iteration", "best_so_far"])
                for i, f in record.trace:
                    w.writerow([i, f])
        elif fmt == "json":
            with path.open("w") as fh:
                json.dump(record.to_dict(), fh, indent=2)
        else:
            raise ConfigurationError(f"unknown export format {fmt!r}")
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e


def export(obj, path, fmt: str = "csv") -> None:
    """Dispatch on payload type: a RunRecord trace or a stats table."""
    if isinstance(obj, RunRecord):
        export_trace(obj, path, fmt)
    elif isinstance(obj, Sequence) and all(isinstance(r, StatsRow) for r in obj):
        export_stats(obj, path, fmt)
    else:
        raise ConfigurationError("export expects a RunRecord or a sequence of StatsRow")
