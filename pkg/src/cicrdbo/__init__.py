"""Dung Beetle Optimizer, its circle-init + crisscross variant, and a
benchmark/tuning harness."""

from .chaos import CircleParams, SearchBox, chaotic_sequence, circle_step, init_population
from .crisscross import CrossoverParams, apply_crisscross, compete, horizontal_cross, vertical_cross
from .dbo import (
    DboParams,
    Individual,
    SwarmState,
    brood_update,
    dance_update,
    dbo_step,
    forage_update,
    roll_update,
    steal_update,
)
from .engine import (
    BatchStats,
    ConfigurationError,
    OptimizerConfig,
    RunRecord,
    StatsRow,
    export,
    run_batch,
    run_optimizer,
    sweep,
)
from .objectives import Objective, by_name, suite

__version__ = "0.1.0"
