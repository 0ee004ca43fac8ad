"""Horizontal and vertical (longitudinal) crossover with greedy retention.

Horizontal crossover blends the same dimension of two paired individuals;
vertical crossover blends two dimensions of one individual. Offspring only
replace their parent when strictly better (ties keep the parent), so no
individual ever gets worse.

RNG draw order inside `apply_crisscross` (fixed for seed-determinism):
  1. one permutation of the population (pairing only; storage order and
     the role partition are untouched)
  2. per pair, in pair order: one acceptance uniform, then for accepted
     pairs r1, r2 uniforms and c1, c2 uniforms on [-1, 1], each (dim,)
  3. per individual, in storage order: one acceptance uniform, then for
     accepted ones a (d1, d2) dimension draw and one blend uniform r
"""

from dataclasses import dataclass

import numpy as np

from .dbo import Individual, SwarmState
from .objectives import Objective


@dataclass(frozen=True)
class CrossoverParams:
    """Application probabilities: ph per pair, pv per individual."""

    ph: float = 1.0
    pv: float = 0.6

    def __post_init__(self):
        if not (0.0 <= self.ph <= 1.0 and 0.0 <= self.pv <= 1.0):
            raise ValueError("crossover probabilities must lie in [0, 1]")
        if self.pv > self.ph:
            raise ValueError("vertical probability must not exceed horizontal")


def horizontal_cross(xi, xj, r1, r2, c1, c2):
    """Blend two parents dimension-wise; returns the two offspring values.

    Accepts scalars (one dimension) or arrays (all dimensions at once).
    """
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    msi = r1 * xi + (1.0 - r1) * xj + c1 * (xi - xj)
    msj = r2 * xj + (1.0 - r2) * xi + c2 * (xj - xi)
    return msi, msj


def vertical_cross(xi: np.ndarray, d1: int, d2: int, r: float) -> float:
    """Blend dimensions d1 and d2 of one individual; new value for d1."""
    if d1 == d2:
        raise ValueError("vertical crossover needs two distinct dimensions")
    return r * xi[d1] + (1.0 - r) * xi[d2]


def compete(parent: Individual, offspring: Individual) -> Individual:
    """Greedy retention: keep whichever has the better (lower) fitness;
    exact ties keep the parent."""
    return offspring if offspring.fitness < parent.fitness else parent


def apply_crisscross(
    state: SwarmState,
    objective: Objective,
    params: CrossoverParams,
    rng: np.random.Generator,
) -> SwarmState:
    """One horizontal pass over random pairs, then one vertical pass,
    both with greedy retention; refreshes the tracked bests."""
    if state.pop_size < 2:
        raise ValueError("crisscross needs at least 2 individuals")
    box = objective.box
    pop, dim = state.pop_size, state.dim

    perm = rng.permutation(pop)

    # horizontal pass: consecutive pairs of the permutation; with an odd
    # population the last permuted individual sits out this iteration
    cand_idx: list[int] = []
    cand_pos: list[np.ndarray] = []
    for p in range(pop // 2):
        i, j = perm[2 * p], perm[2 * p + 1]
        if rng.random() >= params.ph:
            continue
        r1 = rng.random(dim)
        r2 = rng.random(dim)
        c1 = rng.uniform(-1.0, 1.0, dim)
        c2 = rng.uniform(-1.0, 1.0, dim)
        msi, msj = horizontal_cross(state.positions[i], state.positions[j], r1, r2, c1, c2)
        cand_idx += [int(i), int(j)]
        cand_pos += [box.clamp(msi), box.clamp(msj)]
    _compete_batch(state, objective, cand_idx, cand_pos, rng)

    # vertical pass on the (possibly updated) population
    cand_idx, cand_pos = [], []
    for i in range(pop):
        if rng.random() >= params.pv:
            continue
        d1, d2 = rng.choice(dim, size=2, replace=False)
        r = rng.random()
        child = state.positions[i].copy()
        child[d1] = vertical_cross(child, int(d1), int(d2), r)
        child[d1] = min(max(child[d1], box.lower[d1]), box.upper[d1])
        cand_idx.append(i)
        cand_pos.append(child)
    _compete_batch(state, objective, cand_idx, cand_pos, rng)

    state.refresh_bests()
    return state


def _compete_batch(state, objective, idx, positions, rng):
    """Evaluate candidate offspring in one batched call and keep winners."""
    if not idx:
        return
    cand = np.stack(positions)
    fit = np.asarray(objective(cand, rng=rng), dtype=float)
    for i, pos, f in zip(idx, cand, fit):
        if f < state.fitness[i]:
            state.positions[i] = pos
            state.fitness[i] = f
