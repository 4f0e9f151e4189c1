import numpy as np
import pytest

from conftest import write_sample_csv
from hpikit.data import (
    METALS,
    SampleTable,
    SchemaError,
    SplitSpec,
    StandardsTable,
    ValidationError,
    fit_standardiser,
    load_samples,
    split,
    split_indices,
)

ROW = ["s1", -0.4, 5.8, 0.12, 0.05, 0.002, 0.001, 0.001, 0.003]


def make_table(n, seed=0):
    rng = np.random.default_rng(seed)
    return SampleTable(
        ids=tuple(f"s{i}" for i in range(n)),
        coords=rng.uniform(-1, 1, size=(n, 2)),
        metals=rng.lognormal(-3.0, 1.0, size=(n, len(METALS))),
    )


def test_load_samples_roundtrip(tmp_path):
    rows = [
        ["a", -0.40, 5.80, 0.12, 0.05, 0.002, 0.001, 0.001, 0.003],
        ["b", -0.41, 5.81, 0.30, 0.08, 0.001, 0.001, 0.001, 0.001],
        ["c", -0.42, 5.82, 1.20, 0.10, 0.004, 0.002, 0.002, 0.002],
    ]
    path = write_sample_csv(tmp_path / "s.csv", rows)
    table = load_samples(path)
    assert table.n == 3
    assert table.ids == ("a", "b", "c")  # order preserved
    assert table.metals[1, 0] == 0.30
    assert table.metals.flags.writeable is False


def test_load_samples_missing_column(tmp_path):
    path = write_sample_csv(
        tmp_path / "s.csv",
        [["a", 0, 0, 1, 1, 1, 1, 1]],
        header="id,lon,lat,Fe,Mn,Ni,Pb,Cd",
    )
    with pytest.raises(SchemaError, match="As"):
        load_samples(path)


def test_load_samples_bad_value_names_row_and_column(tmp_path):
    rows = [
        ["a", 0, 0, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1],
        ["b", 0, 0, "abc", 0.1, 0.1, 0.1, 0.1, 0.1],
    ]
    path = write_sample_csv(tmp_path / "s.csv", rows)
    with pytest.raises(ValidationError, match=r"row 2.*Fe"):
        load_samples(path)


def test_load_samples_rejects_nonpositive(tmp_path):
    rows = [["a", 0, 0, 0.1, 0.1, 0.0, 0.1, 0.1, 0.1]]
    path = write_sample_csv(tmp_path / "s.csv", rows)
    with pytest.raises(ValidationError, match="Ni"):
        load_samples(path)


def test_load_samples_empty(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(SchemaError):
        load_samples(path)


def test_load_samples_schema_rename(tmp_path):
    path = write_sample_csv(
        tmp_path / "s.csv",
        [["a", 0, 0, 1, 1, 1, 1, 1, 1]],
        header="station,lon,lat,Fe,Mn,Ni,Pb,Cd,As",
    )
    table = load_samples(path, schema={"id": "station"})
    assert table.ids == ("a",)


def test_split_sizes_and_determinism():
    table = make_table(10)
    spec = SplitSpec(train_fraction=0.7, seed=42)
    tr1, te1 = split(table, spec)
    tr2, te2 = split(table, spec)
    assert tr1.n == 7 and te1.n == 3
    assert tr1.ids == tr2.ids and te1.ids == te2.ids
    assert set(tr1.ids) | set(te1.ids) == set(table.ids)
    assert not set(tr1.ids) & set(te1.ids)


def test_split_indices_disjoint_exhaustive():
    for seed in range(5):
        tr, te = split_indices(96, SplitSpec(seed=seed))
        assert len(tr) == 67  # round(0.7 * 96)
        merged = np.sort(np.concatenate([tr, te]))
        assert np.array_equal(merged, np.arange(96))


def test_split_fraction_bounds():
    with pytest.raises(ValidationError):
        SplitSpec(train_fraction=1.0)
    with pytest.raises(ValidationError):
        split_indices(3, SplitSpec())


def test_standardiser_hand_case():
    X = np.array([[1.0], [3.0]])
    s = fit_standardiser(X)
    assert s.mean[0] == 2.0
    assert s.std[0] == pytest.approx(np.sqrt(2.0), abs=0)
    z = s.apply(X)
    assert z[:, 0] == pytest.approx([-0.7071, 0.7071], abs=1e-4)


def test_standardiser_moments_and_roundtrip(rng):
    X = rng.lognormal(0, 1, size=(50, 4))
    s = fit_standardiser(X)
    Z = s.apply(X)
    assert np.all(np.abs(Z.mean(axis=0)) < 1e-10)
    assert np.all(np.abs(Z.var(axis=0, ddof=1) - 1.0) < 1e-8)
    back = s.invert(Z)
    assert np.max(np.abs(back - X)) < 1e-10


def test_standardiser_constant_column_named():
    X = np.column_stack([np.ones(5) * 5.0, np.arange(5.0)])
    with pytest.raises(ValidationError, match="Fe"):
        fit_standardiser(X, column_names=["Fe", "Mn"])


def test_standards_table_invariants():
    with pytest.raises(ValidationError):
        StandardsTable(limits={"Fe": 0.0}, ideals={"Fe": 0.0})
    with pytest.raises(ValidationError):
        StandardsTable(limits={"Fe": 0.3}, ideals={"Fe": 0.0}, k=0.0)
    st = StandardsTable.default()
    assert st.limits["Pb"] == 0.01 and st.k == 1.0


def test_standards_from_file(tmp_path):
    path = tmp_path / "standards.json"
    path.write_text(
        '{"k": 2.0, "metals": {"Fe": {"S": 0.5, "I": 0.1}}}', encoding="utf-8"
    )
    st = StandardsTable.from_file(path)
    assert st.k == 2.0
    assert st.limits["Fe"] == 0.5 and st.ideals["Fe"] == 0.1
    assert st.limits["Mn"] == 0.08  # defaults retained
