import csv
import json
from dataclasses import replace

import numpy as np
import pytest

from cicrdbo.engine import (
    BatchStats,
    ConfigurationError,
    OptimizerConfig,
    RunRecord,
    StatsRow,
    export,
    export_stats,
    export_trace,
    run_batch,
    run_optimizer,
    sweep,
)
from cicrdbo.objectives import by_name

SMALL = OptimizerConfig(algorithm="cicrdbo", pop_size=10, max_iters=50, seed=7)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        OptimizerConfig(algorithm="pso").validate()
    with pytest.raises(ConfigurationError):
        OptimizerConfig(pop_size=1).validate()
    with pytest.raises(ConfigurationError):
        OptimizerConfig(max_iters=0).validate()
    with pytest.raises(ConfigurationError):
        OptimizerConfig(algorithm="cicrdbo", init="uniform").validate()


def test_init_resolution():
    assert OptimizerConfig(algorithm="cicrdbo").validate().init == "circle"
    assert OptimizerConfig(algorithm="dbo").validate().init == "uniform"
    assert OptimizerConfig(algorithm="dbo", init="circle").validate().init == "circle"


def test_run_determinism():
    obj = by_name("sphere", 5)
    a = run_optimizer(SMALL, obj)
    b = run_optimizer(SMALL, obj)
    d1, d2 = a.to_dict(), b.to_dict()
    d1.pop("wall_time")
    d2.pop("wall_time")
    assert d1 == d2


def test_single_iteration_trace():
    obj = by_name("sphere", 5)
    rec = run_optimizer(replace(SMALL, max_iters=1), obj)
    assert len(rec.trace) == 2
    assert rec.trace[1][1] <= rec.trace[0][1]


def test_trace_shape_and_monotonicity():
    obj = by_name("rastrigin", 5)
    for algo in ("dbo", "cicrdbo"):
        rec = run_optimizer(replace(SMALL, algorithm=algo, init=None), obj)
        assert len(rec.trace) == SMALL.max_iters + 1
        vals = [f for _, f in rec.trace]
        assert all(b <= a for a, b in zip(vals, vals[1:]))
        assert rec.final_best_fitness == vals[-1]


def test_final_not_worse_than_initial():
    obj = by_name("sphere", 2)
    rec = run_optimizer(OptimizerConfig(algorithm="cicrdbo", pop_size=10,
                                        max_iters=50, seed=7), obj)
    assert rec.final_best_fitness <= rec.trace[0][1]


def test_batch_singleton_stats():
    obj = by_name("sphere", 4)
    stats, records = run_batch(replace(SMALL, max_iters=5), obj, 1)
    assert stats.n_runs == 1
    assert stats.best == stats.mean
    assert stats.std == 0.0
    assert len(records) == 1


def test_batch_stats_reference_values():
    stats = BatchStats.from_finals([1.0, 3.0])
    assert stats.best == 1.0
    assert stats.mean == 2.0
    assert stats.std == 1.0  # population standard deviation


def test_batch_stats_match_reference_computation():
    obj = by_name("sphere", 4)
    stats, records = run_batch(replace(SMALL, max_iters=10), obj, 5)
    finals = np.array([r.final_best_fitness for r in records])
    assert stats.best == pytest.approx(finals.min(), rel=1e-12)
    assert stats.mean == pytest.approx(finals.mean(), rel=1e-12)
    assert stats.std == pytest.approx(finals.std(), rel=1e-12)


def test_batch_uses_consecutive_seeds():
    obj = by_name("sphere", 4)
    _, records = run_batch(replace(SMALL, max_iters=5), obj, 3)
    seeds = [r.fingerprint.split("seed=")[1].split(":")[0] for r in records]
    assert seeds == ["7", "8", "9"]


def test_default_protocol():
    cfg = OptimizerConfig()
    assert cfg.pop_size == 30 and cfg.max_iters == 500


def test_sweep_rows_and_rejection():
    obj = by_name("sphere", 3)
    base = replace(SMALL, max_iters=5)
    table = sweep(base, obj, "pop_size", [10, 30], 2)
    assert len(table) == 2
    assert table[0][0] == 10 and table[1][0] == 30
    with pytest.raises(ConfigurationError):
        sweep(base, obj, "banana", [1], 1)
    with pytest.raises(ConfigurationError):
        sweep(base, obj, "k", [0.9], 1)  # out of range for the roll coefficient


def test_export_stats_round_trip(tmp_path):
    rows = [StatsRow("dbo", "sphere", 30, 30, 500, 30, 1.25e-7, 3.5, 0.125)]
    path = tmp_path / "stats.csv"
    export_stats(rows, path)
    with path.open() as fh:
        got = list(csv.DictReader(fh))
    assert len(got) == 1
    r = got[0]
    assert r["algorithm"] == "dbo" and r["objective"] == "sphere"
    assert float(r["best"]) == 1.25e-7
    assert float(r["mean"]) == 3.5
    assert float(r["std"]) == 0.125
    assert int(r["iters"]) == 500


def test_export_trace_csv_rows(tmp_path):
    obj = by_name("sphere", 3)
    rec = run_optimizer(replace(SMALL, max_iters=20), obj)
    path = tmp_path / "trace.csv"
    export_trace(rec, path)
    with path.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["iteration", "best_so_far"]
    assert len(rows) - 1 == 21
    # full precision round trip
    assert float(rows[-1][1]) == rec.final_best_fitness


def test_export_trace_json_schema(tmp_path):
    obj = by_name("sphere", 3)
    rec = run_optimizer(replace(SMALL, max_iters=15), obj)
    path = tmp_path / "trace.json"
    export_trace(rec, path, fmt="json")
    data = json.loads(path.read_text())
    assert len(data["trace"]) == 16
    assert data["objective"] == "sphere"
    assert data["final_best_fitness"] == rec.final_best_fitness


def test_export_dispatch_and_errors(tmp_path):
    obj = by_name("sphere", 3)
    rec = run_optimizer(replace(SMALL, max_iters=2), obj)
    export(rec, tmp_path / "a.csv")
    export([StatsRow("dbo", "sphere", 3, 10, 2, 1, 0.0, 0.0, 0.0)], tmp_path / "b.csv")
    with pytest.raises(ConfigurationError):
        export({"not": "supported"}, tmp_path / "c.csv")
    with pytest.raises(ConfigurationError):
        export_trace(rec, tmp_path / "d.xyz", fmt="xml")
    with pytest.raises(OSError, match="no/such"):
        export_trace(rec, tmp_path / "no" / "such" / "dir.csv")
