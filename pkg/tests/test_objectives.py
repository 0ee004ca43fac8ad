import numpy as np
import pytest

from cicrdbo.objectives import Objective, by_name, suite

NAMED_FOUR = ("sphere", "rastrigin", "ackley", "griewank")


def test_suite_has_ten_functions():
    s = suite(30)
    assert len(s) == 10
    names = [o.name for o in s]
    for n in NAMED_FOUR:
        assert n in names


def test_ackley_box():
    o = by_name("ackley", 30)
    assert np.all(o.box.lower == -32) and np.all(o.box.upper == 32)


def test_global_optima_at_minimizers():
    for o in suite(30):
        val = o(o.minimizer)
        assert val == pytest.approx(0.0, abs=1e-9), o.name


def test_named_optima_exact():
    dim = 30
    zeros = np.zeros(dim)
    assert by_name("sphere", dim)(zeros) == 0.0
    assert by_name("rastrigin", dim)(zeros) == pytest.approx(0.0, abs=1e-12)
    assert by_name("griewank", dim)(zeros) == pytest.approx(0.0, abs=1e-12)
    assert by_name("ackley", dim)(zeros) == pytest.approx(0.0, abs=1e-12)


def test_ones_values():
    ones = np.ones(30)
    assert by_name("sphere", 30)(ones) == pytest.approx(30.0, rel=1e-12)
    assert by_name("rastrigin", 30)(ones) == pytest.approx(30.0, rel=1e-12)


def test_nonnegativity_of_named_four():
    rng = np.random.default_rng(1)
    for name in NAMED_FOUR:
        o = by_name(name, 10)
        pts = rng.uniform(o.box.lower, o.box.upper, size=(1000, 10))
        assert np.all(o(pts) >= 0.0), name


def test_purity_bitwise():
    rng = np.random.default_rng(2)
    for o in suite(8):
        if o.noisy:
            continue
        x = rng.uniform(o.box.lower, o.box.upper)
        assert o(x) == o(x)


def test_batch_matches_single():
    rng = np.random.default_rng(3)
    for o in suite(6):
        if o.noisy:
            continue
        pts = rng.uniform(o.box.lower, o.box.upper, size=(5, 6))
        batch = o(pts)
        singles = np.array([o(p) for p in pts])
        np.testing.assert_array_equal(batch, singles)


def test_dimension_mismatch_rejected():
    o = by_name("sphere", 30)
    with pytest.raises(ValueError):
        o(np.zeros(29))


def test_nonfinite_rejected():
    o = by_name("sphere", 3)
    with pytest.raises(ValueError):
        o(np.array([0.0, np.nan, 1.0]))


def test_quartic_noise_uses_rng_stream():
    o = by_name("quartic_noise", 5)
    x = np.zeros(5)
    assert o(x) == 0.0  # no stream, no noise
    a = o(x, rng=np.random.default_rng(9))
    b = o(x, rng=np.random.default_rng(9))
    assert a == b and 0.0 < a < 1.0


def test_suite_requires_dim_two():
    with pytest.raises(ValueError):
        suite(1)
