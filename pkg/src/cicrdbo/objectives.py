"""Benchmark objective functions and the 10-function minimization suite.

Each raw function accepts either a single position (dim,) or a population
(n, dim) and reduces over the last axis, so the optimizer can evaluate a
whole swarm in one call. All functions are minimized and have a known
global minimum of 0 (Schwefel 2.26 is shifted by its analytic minimum).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .chaos import SearchBox

# Minimizer of -x*sin(sqrt(x)) on [-500, 500] and the value there,
# used to shift Schwefel 2.26 so its global minimum is 0.
SCHWEFEL_XSTAR = 420.968746359982
SCHWEFEL_OFFSET = 418.98288727243371


@dataclass(frozen=True)
class Objective:
    """A named minimization problem on a search box."""

    name: str
    box: SearchBox
    fn: Callable[..., np.ndarray]
    known_optimum: float = 0.0
    minimizer: Optional[np.ndarray] = None
    noisy: bool = False

    def __call__(self, x: np.ndarray, rng: Optional[np.random.Generator] = None):
        """Evaluate at a position (dim,) or batch (n, dim)."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.box.dim:
            raise ValueError(
                f"{self.name}: expected {self.box.dim} coordinates, got {x.shape[-1]}"
            )
        if not np.all(np.isfinite(x)):
            raise ValueError(f"{self.name}: non-finite coordinate in input")
        if self.noisy:
            return self.fn(x, rng=rng)
        return self.fn(x)

    @property
    def dim(self) -> int:
        return self.box.dim


def sphere(x):
    return np.sum(x * x, axis=-1)


def schwefel_222(x):
    a = np.abs(x)
    return np.sum(a, axis=-1) + np.prod(a, axis=-1)


def step(x):
    return np.sum(np.floor(x + 0.5) ** 2, axis=-1)


def rosenbrock(x):
    head = x[..., :-1]
    tail = x[..., 1:]
    return np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2, axis=-1)


def quartic_noise(x, rng=None):
    """Weighted quartic; additive uniform noise only when an RNG is supplied."""
    i = np.arange(1, x.shape[-1] + 1)
    base = np.sum(i * x ** 4, axis=-1)
    if rng is not None:
        base = base + rng.random(size=base.shape if base.shape else None)
    return base


def rastrigin(x):
    return np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def ackley(x):
    d = x.shape[-1]
    s1 = np.sum(x * x, axis=-1) / d
    s2 = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d
    return -20.0 * np.exp(-0.2 * np.sqrt(s1)) - np.exp(s2) + 20.0 + np.e


def griewank(x):
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / np.sqrt(i)), axis=-1) + 1.0


def schwefel_226(x):
    d = x.shape[-1]
    return SCHWEFEL_OFFSET * d - np.sum(x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def levy(x):
    w = 1.0 + (x - 1.0) / 4.0
    w0 = w[..., 0]
    wd = w[..., -1]
    mid = w[..., :-1]
    term1 = np.sin(np.pi * w0) ** 2
    term2 = np.sum((mid - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * mid + 1.0) ** 2), axis=-1)
    term3 = (wd - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * wd) ** 2)
    return term1 + term2 + term3


def suite(dim: int) -> list[Objective]:
    """The 10 benchmark objectives at the given dimension, standard boxes."""
    if dim < 2:
        raise ValueError("suite needs dim >= 2")

    def obj(name, low, high, fn, minimizer=0.0, noisy=False):
        return Objective(
            name=name,
            box=SearchBox.cube(low, high, dim),
            fn=fn,
            known_optimum=0.0,
            minimizer=np.full(dim, float(minimizer)),
            noisy=noisy,
        )

    return [
        obj("sphere", -100, 100, sphere),
        obj("schwefel_2_22", -10, 10, schwefel_222),
        obj("step", -100, 100, step),
        obj("rosenbrock", -30, 30, rosenbrock, minimizer=1.0),
        obj("quartic_noise", -1.28, 1.28, quartic_noise, noisy=True),
        obj("rastrigin", -5.12, 5.12, rastrigin),
        obj("ackley", -32, 32, ackley),
        obj("griewank", -600, 600, griewank),
        obj("schwefel_2_26", -500, 500, schwefel_226, minimizer=SCHWEFEL_XSTAR),
        obj("levy", -10, 10, levy, minimizer=1.0),
    ]


def by_name(name: str, dim: int) -> Objective:
    for o in suite(dim):
        if o.name == name:
            return o
    raise KeyError(f"unknown objective {name!r}")
