"""Deterministic Heavy Metal Pollution Index and its quality classes.

Per metal: sub-index Q = (M - I)/(S - I) * 100 and unit weight W = k/S.
The index is the W-weighted mean of the Q values, so the proportionality
constant k cancels and HPI is a convex combination of the sub-indices.
"""

from dataclasses import dataclass

import numpy as np

from .data import METALS, ValidationError

#: Class labels in increasing-pollution order.
CLASS_LABELS = (
    "excellent",
    "good_to_intermediate",
    "poor_to_unsuitable",
    "very_poor",
    "unsuitable_for_drinking",
)


def classify(value):
    """Map an HPI value to its quality class label.

    The customary scheme uses integer band edges (15/30, 31/75, 76/100),
    which leaves gaps for a continuous index; the half-open convention here
    covers the whole line: (-inf,15) excellent, [15,31) good_to_intermediate,
    [31,76) poor_to_unsuitable, [76,100] very_poor, (100,inf) unsuitable.
    """
    if value < 15.0:
        return CLASS_LABELS[0]
    if value < 31.0:
        return CLASS_LABELS[1]
    if value < 76.0:
        return CLASS_LABELS[2]
    if value <= 100.0:
        return CLASS_LABELS[3]
    return CLASS_LABELS[4]


def sub_index(m, s, i=0.0):
    """Sub-index Q for one metal: percent exceedance of the measured value
    over the ideal, relative to the permissible span."""
    if s <= i:
        raise ValidationError(f"need S > I, got S={s}, I={i}")
    return (m - i) / (s - i) * 100.0


def unit_weight(s, k=1.0):
    """Unit weight W = k/S; metals with lower permissible limits weigh more."""
    if s <= 0:
        raise ValidationError(f"permissible limit must be > 0, got {s}")
    if k <= 0:
        raise ValidationError(f"k must be > 0, got {k}")
    return k / s


@dataclass(frozen=True)
class HpiResult:
    metals: tuple
    q: np.ndarray  # per-metal sub-indices (dimensionless %)
    w: np.ndarray  # per-metal unit weights (L/mg)
    hpi: float
    label: str

    def to_dict(self):
        return {
            "metals": list(self.metals),
            "Q": self.q.tolist(),
            "W": self.w.tolist(),
            "HPI": self.hpi,
            "class": self.label,
        }


def hpi(concentrations, standards):
    """HPI of one sample given a metal->concentration mapping or a vector in
    canonical metal order."""
    if isinstance(concentrations, dict):
        missing = [m for m in METALS if m not in concentrations]
        if missing:
            raise ValidationError(f"concentration(s) missing: {', '.join(missing)}")
        vec = np.array([concentrations[m] for m in METALS], dtype=np.float64)
    else:
        vec = np.asarray(concentrations, dtype=np.float64)
        if vec.shape != (len(METALS),):
            raise ValidationError(
                f"expected {len(METALS)} concentrations, got shape {vec.shape}"
            )
    missing = [m for m in METALS if m not in standards.limits]
    if missing:
        raise ValidationError(f"standards missing for: {', '.join(missing)}")
    q = np.empty(len(METALS))
    w = np.empty(len(METALS))
    for j, metal in enumerate(METALS):
        s = standards.limits[metal]
        i = standards.ideals.get(metal, 0.0)
        q[j] = sub_index(vec[j], s, i)
        w[j] = unit_weight(s, standards.k)
    value = float((w * q).sum() / w.sum())
    return HpiResult(metals=METALS, q=q, w=w, hpi=value, label=classify(value))


def hpi_column(table, standards):
    """HPI per row of a SampleTable; the regression target of the pipeline."""
    return np.array(
        [hpi(table.metals[i], standards).hpi for i in range(table.n)],
        dtype=np.float64,
    )
