"""Sample ingestion, the standards configuration, splitting, and z-scoring.

Concentrations are read verbatim from the CSV: values at the laboratory
reporting limit stay as recorded, with no censoring substitution.
"""

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from . import audit

#: Canonical metal order; every matrix, weight vector, and centroid uses it.
METALS = ("Fe", "Mn", "Ni", "Pb", "Cd", "As")

#: Permissible limits (mg/L) shipped as defaults: WHO drinking-water
#: guideline values (Fe has no formal guideline; 0.3 mg/L is the customary
#: acceptability threshold). Override via a standards file.
DEFAULT_LIMITS = {
    "Fe": 0.3,
    "Mn": 0.08,
    "Ni": 0.07,
    "Pb": 0.01,
    "Cd": 0.003,
    "As": 0.01,
}


class SchemaError(ValueError):
    """Input file does not have the expected columns or structure."""


class ValidationError(ValueError):
    """A row-level value is missing, non-numeric, or out of domain."""


@dataclass(frozen=True)
class SampleTable:
    """Immutable table of groundwater samples.

    ids: sample identifiers, row order preserved from the source.
    coords: (n, 2) array of (lon, lat) in degrees.
    metals: (n, 6) array of concentrations in mg/L, columns in METALS order.
    """

    ids: tuple
    coords: np.ndarray
    metals: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _readonly(self.coords, 2))
        object.__setattr__(self, "metals", _readonly(self.metals, 2))

    @property
    def n(self):
        return len(self.ids)

    def subset(self, indices):
        idx = np.asarray(indices, dtype=np.int64)
        return SampleTable(
            ids=tuple(self.ids[i] for i in idx),
            coords=self.coords[idx],
            metals=self.metals[idx],
        )


def _readonly(a, ndim):
    arr = np.array(a, dtype=np.float64)
    if arr.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def load_samples(path, schema=None):
    """Read a sample CSV into a SampleTable.

    The header must contain ``id``, ``lon``, ``lat``, and the six metal
    columns. ``schema`` optionally maps those canonical names to the file's
    actual column names. Rows are kept in file order; any non-numeric or
    non-positive concentration aborts with the row and column named.
    """
    schema = schema or {}
    colname = {key: schema.get(key, key) for key in ("id", "lon", "lat") + METALS}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file")
        missing = [c for c in colname.values() if c not in reader.fieldnames]
        if missing:
            raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
        ids = []
        coords = []
        rows = []
        for lineno, rec in enumerate(reader, start=1):
            ids.append(rec[colname["id"]])
            try:
                coords.append(
                    (float(rec[colname["lon"]]), float(rec[colname["lat"]]))
                )
            except (TypeError, ValueError):
                raise ValidationError(
                    f"{path}: row {lineno}: non-numeric coordinate"
                ) from None
            vals = []
            for metal in METALS:
                raw = rec[colname[metal]]
                try:
                    v = float(raw)
                except (TypeError, ValueError):
                    raise ValidationError(
                        f"{path}: row {lineno}: column {metal}: "
                        f"non-numeric value {raw!r}"
                    ) from None
                if not math.isfinite(v) or v <= 0.0:
                    raise ValidationError(
                        f"{path}: row {lineno}: column {metal}: "
                        f"concentration must be finite and > 0, got {raw!r}"
                    )
                vals.append(v)
            rows.append(vals)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return SampleTable(
        ids=tuple(ids),
        coords=np.array(coords, dtype=np.float64),
        metals=np.array(rows, dtype=np.float64),
    )


@dataclass(frozen=True)
class StandardsTable:
    """Per-metal permissible limit S and ideal value I, plus the global
    proportionality constant k used for the unit weights."""

    limits: dict  # metal -> S_i (mg/L)
    ideals: dict  # metal -> I_i (mg/L)
    k: float = 1.0

    def __post_init__(self):
        if self.k <= 0:
            raise ValidationError(f"k must be > 0, got {self.k}")
        for metal, s in self.limits.items():
            i = self.ideals.get(metal, 0.0)
            if not (s > i >= 0.0):
                raise ValidationError(
                    f"standards for {metal}: need S > I >= 0, got S={s}, I={i}"
                )

    @classmethod
    def default(cls, k=1.0):
        return cls(
            limits=dict(DEFAULT_LIMITS),
            ideals={m: 0.0 for m in METALS},
            k=k,
        )

    @classmethod
    def from_file(cls, path):
        """Load a standards JSON file.

        Format: ``{"k": 1.0, "metals": {"Fe": {"S": 0.3, "I": 0.0}, ...}}``.
        Metals absent from the file fall back to the shipped defaults.
        """
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        limits = dict(DEFAULT_LIMITS)
        ideals = {m: 0.0 for m in METALS}
        for metal, entry in doc.get("metals", {}).items():
            if metal not in METALS:
                raise SchemaError(f"{path}: unknown metal {metal!r}")
            if "S" in entry:
                limits[metal] = float(entry["S"])
            if "I" in entry:
                ideals[metal] = float(entry["I"])
        return cls(limits=limits, ideals=ideals, k=float(doc.get("k", 1.0)))

    def to_dict(self):
        return {
            "k": self.k,
            "metals": {
                m: {"S": self.limits[m], "I": self.ideals.get(m, 0.0)}
                for m in self.limits
            },
        }


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.70
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValidationError(
                f"train fraction must lie in (0, 1), got {self.train_fraction}"
            )


def split_indices(n, spec):
    """Deterministic random train/test index split.

    Train size is round(fraction * n) (half-up). Both index lists come back
    sorted ascending; together they partition range(n).
    """
    if n < 4:
        raise ValidationError(f"need at least 4 samples to split, got {n}")
    n_train = int(math.floor(spec.train_fraction * n + 0.5))
    n_train = min(max(n_train, 1), n - 1)
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    perm = rng.permutation(n)
    train = np.sort(perm[:n_train])
    test = np.sort(perm[n_train:])
    return train, test


def split(table, spec):
    """Split a SampleTable into (train, test) tables per SplitSpec."""
    train_idx, test_idx = split_indices(table.n, spec)
    return table.subset(train_idx), table.subset(test_idx)


@dataclass(frozen=True)
class Standardiser:
    """Column-wise z-score map fitted on training rows only."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mean", _readonly_1d(self.mean))
        object.__setattr__(self, "std", _readonly_1d(self.std))

    def apply(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[-1] != self.mean.shape[0]:
            raise ValidationError(
                f"column count {X.shape[-1]} does not match fit "
                f"({self.mean.shape[0]})"
            )
        return (X - self.mean) / self.std

    def invert(self, Z):
        Z = np.asarray(Z, dtype=np.float64)
        return Z * self.std + self.mean

    def to_dict(self):
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, doc):
        return cls(np.asarray(doc["mean"]), np.asarray(doc["std"]))


def _readonly_1d(a):
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def fit_standardiser(X, column_names=None, row_ids=None, scope=()):
    """Fit per-column mean and sample std (ddof=1). Constant columns are an
    error, named via ``column_names`` when provided."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValidationError("standardiser needs a 2-d matrix with >= 2 rows")
    mean = X.mean(axis=0)
    std = X.std(axis=0, ddof=1)
    bad = np.nonzero(std <= 0.0)[0]
    if bad.size:
        names = (
            ", ".join(str(column_names[j]) for j in bad)
            if column_names is not None
            else ", ".join(str(j) for j in bad)
        )
        raise ValidationError(f"constant column(s): {names}")
    audit.notify_fit("standardiser", "zscore", row_ids=row_ids, data=X, scope=scope)
    return Standardiser(mean=mean, std=std)
