"""Circle-map chaotic sequences and chaotic population initialization."""

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class CircleParams:
    """Coefficients of the circle map x -> mod(x + b - a/(2*pi) * sin(2*pi*x), 1)."""

    a: float = 0.5
    b: float = 0.2

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValueError("circle map parameters must be finite")


@dataclass(frozen=True)
class SearchBox:
    """Axis-aligned box of per-dimension bounds."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-d arrays of equal length")
        if lower.size == 0:
            raise ValueError("box must have at least one dimension")
        if not np.all(lower < upper):
            raise ValueError("degenerate box: require lower[d] < upper[d] for every d")

    @property
    def dim(self) -> int:
        return self.lower.size

    @classmethod
    def cube(cls, low: float, high: float, dim: int) -> "SearchBox":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


def circle_step(x: float, params: CircleParams = CircleParams()) -> float:
    """One iterate of the circle map; maps [0, 1) into [0, 1)."""
    if not (0.0 <= x < 1.0):
        raise ValueError(f"circle map input must lie in [0, 1), got {x}")
    nxt = (x + params.b - params.a / TWO_PI * np.sin(TWO_PI * x)) % 1.0
    # % can return exactly 1.0 when the remainder underflows; fold it back
    return nxt if nxt < 1.0 else 0.0


def chaotic_sequence(x0: float, n: int, params: CircleParams = CircleParams()) -> np.ndarray:
    """First n iterates of the circle map started from x0 (x0 itself excluded)."""
    if n < 1:
        raise ValueError("chaotic_sequence needs n >= 1")
    if not (0.0 <= x0 < 1.0):
        raise ValueError(f"seed must lie in [0, 1), got {x0}")
    out = np.empty(n)
    x = x0
    for i in range(n):
        x = circle_step(x, params)
        out[i] = x
    return out


def init_population(
    box: SearchBox,
    pop_size: int,
    x0: float,
    params: CircleParams = CircleParams(),
) -> np.ndarray:
    """Chaotically initialized (pop_size, dim) positions inside the box.

    A single chaotic stream of pop_size*dim values is consumed row-major
    (individual-major, dimension-minor) and mapped affinely onto the bounds.
    """
    if pop_size < 1:
        raise ValueError("pop_size must be >= 1")
    u = chaotic_sequence(x0, pop_size * box.dim, params).reshape(pop_size, box.dim)
    return box.lower + u * (box.upper - box.lower)
