"""Baseline Dung Beetle Optimizer: role-partitioned swarm updates.

The population is split once, by index, into four fixed role blocks:
rollers, brooders, foragers, thieves. One `dbo_step` updates every
individual with its role rule, re-evaluates fitness in a single batched
objective call, and refreshes the tracked best/worst positions.

RNG draw order inside `dbo_step` (fixed so runs are seed-deterministic):
  1. rollers: obstacle uniforms (n_roll,), dance angles (n_roll,),
     deviation uniforms (n_roll,)
  2. brooders: b1 then b2, each (n_brood, dim) uniforms
  3. foragers: C1 normals then C2 uniforms, each (n_forage, dim)
  4. thieves: g normals (n_thief, dim)
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .chaos import SearchBox
from .objectives import Objective

# Role proportions of the reference configuration (6, 6, 7, 11) at pop 30.
ROLE_FRACTIONS = (6 / 30, 6 / 30, 7 / 30, 11 / 30)

EXCLUDED_ANGLES = (0.0, np.pi / 2, np.pi)


def role_counts_for(pop_size: int) -> tuple[int, int, int, int]:
    """Largest-remainder rounding of the reference role proportions."""
    raw = [f * pop_size for f in ROLE_FRACTIONS]
    counts = [int(np.floor(r)) for r in raw]
    short = pop_size - sum(counts)
    order = np.argsort([c - r for c, r in zip(counts, raw)])  # largest remainder first
    for i in range(short):
        counts[order[i]] += 1
    return tuple(counts)


@dataclass(frozen=True)
class DboParams:
    """Constants of the baseline optimizer."""

    k: float = 0.1                # deflection coefficient on the t-1 position
    b_roll: float = 0.3           # light-intensity coefficient on the worst-distance term
    s: float = 0.5                # stealing scale
    deviation_prob: float = 0.1   # probability a roller rolls with alpha = -1
    obstacle_prob: float = 0.1    # probability a roller dances instead of rolling
    role_counts: Optional[tuple[int, int, int, int]] = None

    def __post_init__(self):
        if not (0.0 < self.k <= 0.2):
            raise ValueError("k must lie in (0, 0.2]")
        if not (0.0 < self.b_roll < 1.0):
            raise ValueError("b_roll must lie in (0, 1)")
        if self.s <= 0.0:
            raise ValueError("s must be positive")
        for p in (self.deviation_prob, self.obstacle_prob):
            if not (0.0 <= p <= 1.0):
                raise ValueError("probabilities must lie in [0, 1]")

    def counts(self, pop_size: int) -> tuple[int, int, int, int]:
        if self.role_counts is not None:
            if sum(self.role_counts) != pop_size:
                raise ValueError("role counts must sum to the population size")
            return self.role_counts
        return role_counts_for(pop_size)


@dataclass
class Individual:
    """One swarm member: current and previous position plus cached fitness."""

    position: np.ndarray
    previous_position: np.ndarray
    fitness: float


@dataclass
class SwarmState:
    """Population arrays plus the tracked best/worst positions."""

    positions: np.ndarray        # (pop, dim)
    prev_positions: np.ndarray   # positions at t-1
    fitness: np.ndarray          # (pop,)
    role_counts: tuple[int, int, int, int]
    t: int
    best_position: np.ndarray    # best ever seen
    best_fitness: float
    iter_best_position: np.ndarray   # best of the current iteration
    iter_best_fitness: float
    worst_position: np.ndarray       # worst of the current iteration
    worst_fitness: float

    @property
    def pop_size(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    @classmethod
    def from_positions(
        cls,
        positions: np.ndarray,
        objective: Objective,
        params: DboParams,
        rng: Optional[np.random.Generator] = None,
    ) -> "SwarmState":
        positions = np.asarray(positions, dtype=float)
        fitness = np.asarray(objective(positions, rng=rng), dtype=float)
        ib = int(np.argmin(fitness))
        iw = int(np.argmax(fitness))
        return cls(
            positions=positions.copy(),
            prev_positions=positions.copy(),
            fitness=fitness,
            role_counts=params.counts(positions.shape[0]),
            t=0,
            best_position=positions[ib].copy(),
            best_fitness=float(fitness[ib]),
            iter_best_position=positions[ib].copy(),
            iter_best_fitness=float(fitness[ib]),
            worst_position=positions[iw].copy(),
            worst_fitness=float(fitness[iw]),
        )

    def refresh_bests(self) -> None:
        ib = int(np.argmin(self.fitness))
        iw = int(np.argmax(self.fitness))
        self.iter_best_position = self.positions[ib].copy()
        self.iter_best_fitness = float(self.fitness[ib])
        self.worst_position = self.positions[iw].copy()
        self.worst_fitness = float(self.fitness[iw])
        if self.iter_best_fitness < self.best_fitness:
            self.best_fitness = self.iter_best_fitness
            self.best_position = self.iter_best_position.copy()

    def copy(self) -> "SwarmState":
        return SwarmState(
            positions=self.positions.copy(),
            prev_positions=self.prev_positions.copy(),
            fitness=self.fitness.copy(),
            role_counts=self.role_counts,
            t=self.t,
            best_position=self.best_position.copy(),
            best_fitness=self.best_fitness,
            iter_best_position=self.iter_best_position.copy(),
            iter_best_fitness=self.iter_best_fitness,
            worst_position=self.worst_position.copy(),
            worst_fitness=self.worst_fitness,
        )


# ---------------------------------------------------------------------------
# Per-individual update rules. Each returns a new, box-clamped position.

def roll_update(
    ind: Individual,
    worst: np.ndarray,
    alpha: int,
    params: DboParams,
    box: SearchBox,
) -> np.ndarray:
    if alpha not in (-1, 1):
        raise ValueError("alpha must be -1 or +1")
    x = ind.position
    delta = np.abs(x - worst)
    return box.clamp(x + alpha * params.k * ind.previous_position + params.b_roll * delta)


def dance_update(ind: Individual, theta: float, box: SearchBox) -> np.ndarray:
    if theta in EXCLUDED_ANGLES:
        return ind.position.copy()
    x = ind.position
    return box.clamp(x + np.tan(theta) * np.abs(x - ind.previous_position))


def _shrunk_region(center: np.ndarray, shrink: float, box: SearchBox):
    """Per-dimension [max(c*(1-R), Lb), min(c*(1+R), Ub)]; inverted intervals
    collapse to the clamped center."""
    lo = np.maximum(center * (1.0 - shrink), box.lower)
    hi = np.minimum(center * (1.0 + shrink), box.upper)
    bad = lo > hi
    if np.any(bad):
        c = box.clamp(center)
        lo = np.where(bad, c, lo)
        hi = np.where(bad, c, hi)
    return lo, hi


def brood_update(
    ind: Individual,
    best: np.ndarray,
    shrink: float,
    b1: np.ndarray,
    b2: np.ndarray,
    box: SearchBox,
) -> np.ndarray:
    lo, hi = _shrunk_region(best, shrink, box)
    x = ind.position
    return box.clamp(best + b1 * (x - lo) + b2 * (x - hi))


def forage_update(
    ind: Individual,
    iter_best: np.ndarray,
    shrink: float,
    c1: np.ndarray,
    c2: np.ndarray,
    box: SearchBox,
) -> np.ndarray:
    lo, hi = _shrunk_region(iter_best, shrink, box)
    x = ind.position
    return box.clamp(x + c1 * (x - lo) + c2 * (x - hi))


def steal_update(
    ind: Individual,
    best: np.ndarray,
    iter_best: np.ndarray,
    g: np.ndarray,
    params: DboParams,
    box: SearchBox,
) -> np.ndarray:
    x = ind.position
    move = params.s * g * (np.abs(x - best) + np.abs(x - iter_best))
    return box.clamp(iter_best + move)


def dbo_step(
    state: SwarmState,
    objective: Objective,
    params: DboParams,
    rng: np.random.Generator,
    max_iters: int,
) -> SwarmState:
    """Advance the swarm one iteration in place (and return it)."""
    if state.t >= max_iters:
        raise ValueError("iteration budget exhausted")
    box = objective.box
    n_roll, n_brood, n_forage, n_thief = state.role_counts
    x = state.positions
    xp = state.prev_positions
    new = np.empty_like(x)
    shrink = 1.0 - (state.t + 1) / max_iters

    # rollers: dance with prob obstacle_prob, else roll
    sl = slice(0, n_roll)
    u_obst = rng.random(n_roll)
    thetas = rng.uniform(0.0, np.pi, n_roll)
    u_dev = rng.random(n_roll)
    alpha = np.where(u_dev < params.deviation_prob, -1.0, 1.0)
    rolled = x[sl] + alpha[:, None] * params.k * xp[sl] + params.b_roll * np.abs(
        x[sl] - state.worst_position
    )
    tan = np.tan(thetas)
    tan[np.isin(thetas, EXCLUDED_ANGLES)] = 0.0
    danced = x[sl] + tan[:, None] * np.abs(x[sl] - xp[sl])
    new[sl] = np.where((u_obst < params.obstacle_prob)[:, None], danced, rolled)

    # brooders: offspring inside a region shrinking around the global best
    sl = slice(n_roll, n_roll + n_brood)
    b1 = rng.random((n_brood, state.dim))
    b2 = rng.random((n_brood, state.dim))
    lo, hi = _shrunk_region(state.best_position, shrink, box)
    new[sl] = state.best_position + b1 * (x[sl] - lo) + b2 * (x[sl] - hi)

    # foragers: move within a region shrinking around the iteration best
    sl = slice(n_roll + n_brood, n_roll + n_brood + n_forage)
    c1 = rng.normal(size=(n_forage, state.dim))
    c2 = rng.random((n_forage, state.dim))
    lo, hi = _shrunk_region(state.iter_best_position, shrink, box)
    new[sl] = x[sl] + c1 * (x[sl] - lo) + c2 * (x[sl] - hi)

    # thieves: jump near the iteration best
    sl = slice(state.pop_size - n_thief, state.pop_size)
    g = rng.normal(size=(n_thief, state.dim))
    new[sl] = state.iter_best_position + params.s * g * (
        np.abs(x[sl] - state.best_position) + np.abs(x[sl] - state.iter_best_position)
    )

    np.clip(new, box.lower, box.upper, out=new)
    state.prev_positions = x
    state.positions = new
    state.fitness = np.asarray(objective(new, rng=rng), dtype=float)
    state.t += 1
    state.refresh_bests()
    return state
