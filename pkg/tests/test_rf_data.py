import csv

import numpy as np
import pytest

from cicrdbo.rf.data import (
    Dataset,
    ParseError,
    SchemaError,
    design_matrix,
    load_dataset,
    stratified_split,
)


def test_row_count_and_channel_proportions(wholesale):
    assert wholesale.n_rows == 440
    frac_pos = wholesale.labels.mean()
    assert (1 - frac_pos) * 100 == pytest.approx(67.7, abs=0.1)
    assert frac_pos * 100 == pytest.approx(32.3, abs=0.1)


def test_region_proportions(wholesale):
    region = wholesale.features[:, wholesale.feature_names.index("Region")]
    props = [np.mean(region == v) * 100 for v in (1, 2, 3)]
    assert props[0] == pytest.approx(17.5, abs=0.1)
    assert props[1] == pytest.approx(10.7, abs=0.1)
    assert props[2] == pytest.approx(71.8, abs=0.1)


def test_spelling_normalized(wholesale):
    assert "Delicatessen" in wholesale.feature_names
    assert "Delicassen" not in wholesale.feature_names


def test_region_flagged_categorical(wholesale):
    mask = dict(zip(wholesale.feature_names, wholesale.categorical_mask))
    assert mask["Region"]
    assert not mask["Grocery"]


def _write_csv(path, header, rows):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def test_missing_column_schema_error(tmp_path):
    p = tmp_path / "bad.csv"
    _write_csv(p, ["Channel", "Region", "Fresh", "Milk", "Frozen",
                   "Detergents_Paper", "Delicassen"],
               [[1, 3, 10, 10, 10, 10, 10]])
    with pytest.raises(SchemaError, match="Grocery"):
        load_dataset(p)


def test_non_numeric_cell_parse_error(tmp_path):
    p = tmp_path / "bad.csv"
    _write_csv(p, ["Channel", "Region", "Fresh", "Milk", "Grocery", "Frozen",
                   "Detergents_Paper", "Delicassen"],
               [[1, 3, 10, 10, 10, 10, 10, 10],
                [2, 1, 10, "oops", 10, 10, 10, 10]])
    with pytest.raises(ParseError, match="row 1"):
        load_dataset(p)


def test_split_sizes(wholesale):
    train, test = stratified_split(wholesale, 0.7, 0)
    assert train.n_rows + test.n_rows == 440
    assert abs(train.n_rows - 308) <= 2  # +-1 rounding per class
    assert abs(test.n_rows - 132) <= 2


def test_split_determinism_and_disjointness(wholesale):
    t1a, t2a = stratified_split(wholesale, 0.7, 5)
    t1b, t2b = stratified_split(wholesale, 0.7, 5)
    np.testing.assert_array_equal(t1a.features, t1b.features)
    np.testing.assert_array_equal(t2a.labels, t2b.labels)
    # union reconstructs the original multiset of rows
    all_rows = np.vstack([t1a.features, t2a.features])
    assert sorted(map(tuple, all_rows)) == sorted(map(tuple, wholesale.features))


def test_split_preserves_class_ratio(wholesale):
    train, test = stratified_split(wholesale, 0.7, 1)
    full = wholesale.labels.mean()
    assert abs(train.labels.mean() - full) <= 0.02
    assert abs(test.labels.mean() - full) <= 0.02


def test_split_rejects_bad_ratio(wholesale):
    for r in (0.0, 1.0, -0.5):
        with pytest.raises(ValueError):
            stratified_split(wholesale, r, 0)


def test_design_matrix_one_hot(wholesale):
    X, names = design_matrix(wholesale)
    assert X.shape == (440, 9)  # 3 region indicators + 6 continuous
    region_cols = [i for i, n in enumerate(names) if n.startswith("Region=")]
    assert len(region_cols) == 3
    np.testing.assert_array_equal(X[:, region_cols].sum(axis=1), np.ones(440))


def test_design_matrix_category_alignment(wholesale):
    train, test = stratified_split(wholesale, 0.7, 2)
    cats = wholesale.categories()
    Xtr, ntr = design_matrix(train, cats)
    Xte, nte = design_matrix(test, cats)
    assert ntr == nte
    assert Xtr.shape[1] == Xte.shape[1]


def test_dataset_invariants():
    with pytest.raises(ValueError):
        Dataset(np.zeros((3, 2)), np.array([0, 1]), ["a", "b"], np.zeros(2, bool))
    with pytest.raises(ValueError):
        Dataset(np.zeros((2, 2)), np.array([0, 2]), ["a", "b"], np.zeros(2, bool))
    with pytest.raises(ValueError):
        Dataset(np.full((2, 2), np.nan), np.array([0, 1]), ["a", "b"], np.zeros(2, bool))
