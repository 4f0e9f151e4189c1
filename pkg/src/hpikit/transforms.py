"""Response transformations: raw, log(1+y), and the rank-based Gaussian
copula map, plus QQ-style normality diagnostics.

All three expose the same fitted interface (forward/inverse) so the
cross-validation driver can treat them uniformly. Fitting uses training
values only; out-of-sample values map through monotone piecewise-linear
interpolation between the fitted knots, clamped at the training range.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from . import audit
from .data import ValidationError
from .rankstats import average_ranks

TRANSFORM_KINDS = ("raw", "log", "copula")

# Rational approximation of the standard normal quantile function
# (Acklam's algorithm), polished by one Halley step against erfc. The raw
# approximation is accurate to ~1.2e-9; the polished value is accurate to
# a few ulp.
_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def normal_cdf(x):
    """Standard normal CDF via the complementary error function."""
    return 0.5 * erfc(-np.asarray(x, dtype=np.float64) / _SQRT2)


def _probit_half(p):
    """Probit on (0, 0.5]; negative or zero results only."""
    x = np.empty_like(p)
    lower = p < 0.02425
    mid = ~lower
    if np.any(mid):
        q = p[mid] - 0.5
        r = q * q
        num = ((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]
        den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
        x[mid] = q * num / den
    if np.any(lower):
        q = np.sqrt(-2.0 * np.log(p[lower]))
        num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
        den = (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        x[lower] = num / den
    # one Halley refinement; x <= 0 keeps erfc well conditioned here
    err = 0.5 * erfc(-x / _SQRT2) - p
    u = err * _SQRT_2PI * np.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def normal_quantile(p):
    """Standard normal quantile (probit) for p in (0, 1), vectorised.

    Upper-half arguments are reflected to the lower half, so the refinement
    always runs where the error function is well conditioned.
    """
    p = np.asarray(p, dtype=np.float64)
    if np.any((p <= 0.0) | (p >= 1.0)):
        raise ValidationError("probit argument must lie strictly in (0, 1)")
    flip = p > 0.5
    q = np.where(flip, 1.0 - p, p)
    x = np.where(flip, -_probit_half(q), _probit_half(q))
    return x if x.ndim else float(x)


@dataclass(frozen=True)
class FittedTransform:
    """A fitted monotone response map with an exact inverse on its range.

    kind "raw" and "log" are stateless; "copula" stores the training knots
    (sorted unique response values and their normal scores).
    """

    kind: str
    y_knots: np.ndarray | None = field(default=None)
    z_knots: np.ndarray | None = field(default=None)

    def forward(self, y):
        y = np.asarray(y, dtype=np.float64)
        if self.kind == "raw":
            return y.copy()
        if self.kind == "log":
            if np.any(y < 0.0):
                raise ValidationError("log transform requires y >= 0")
            return np.log1p(y)
        return np.interp(y, self.y_knots, self.z_knots)

    def inverse(self, z):
        z = np.asarray(z, dtype=np.float64)
        if self.kind == "raw":
            return z.copy()
        if self.kind == "log":
            return np.expm1(z)
        return np.interp(z, self.z_knots, self.y_knots)

    def to_dict(self):
        doc = {"kind": self.kind}
        if self.kind == "copula":
            doc["y_knots"] = self.y_knots.tolist()
            doc["z_knots"] = self.z_knots.tolist()
        return doc

    @classmethod
    def from_dict(cls, doc):
        if doc["kind"] == "copula":
            return cls(
                kind="copula",
                y_knots=np.asarray(doc["y_knots"], dtype=np.float64),
                z_knots=np.asarray(doc["z_knots"], dtype=np.float64),
            )
        return cls(kind=doc["kind"])


def copula_fit(y_train):
    """Fit the rank-based Gaussian copula map on training responses.

    Average ranks R(y) (ties share their block mean) map to uniform scores
    u = R/(n+1) and then through the probit to normal scores z. Tied
    responses share one knot.
    """
    y = np.asarray(y_train, dtype=np.float64)
    if y.shape[0] < 3:
        raise ValidationError("copula fit needs at least 3 observations")
    if np.all(y == y[0]):
        raise ValidationError("copula fit undefined for an all-equal response")
    u = average_ranks(y) / (y.shape[0] + 1.0)
    z = normal_quantile(u)
    order = np.argsort(y, kind="stable")
    y_sorted = y[order]
    z_sorted = z[order]
    keep = np.ones(y.shape[0], dtype=bool)
    keep[1:] = y_sorted[1:] > y_sorted[:-1]
    return FittedTransform(
        kind="copula", y_knots=y_sorted[keep].copy(), z_knots=z_sorted[keep].copy()
    )


def fit_transform(kind, y_train, row_ids=None, scope=()):
    """Fit the named response transform on training values (audited)."""
    if kind not in TRANSFORM_KINDS:
        raise ValidationError(f"unknown transform kind {kind!r}")
    y = np.asarray(y_train, dtype=np.float64)
    if kind == "copula":
        t = copula_fit(y)
    elif kind == "log":
        if np.any(y < 0.0):
            raise ValidationError("log transform requires y >= 0")
        t = FittedTransform(kind="log")
    else:
        t = FittedTransform(kind="raw")
    audit.notify_fit("transform", kind, row_ids=row_ids, data=y, scope=scope)
    return t


@dataclass(frozen=True)
class NormalityDiagnostic:
    """Goodness of the normal fit for one variable: R-squared of the QQ
    regression line plus histogram counts for the marginal shape."""

    kind: str
    r2: float
    slope: float
    intercept: float
    hist_counts: np.ndarray
    hist_edges: np.ndarray

    def to_dict(self):
        return {
            "kind": self.kind,
            "qq_r2": self.r2,
            "slope": self.slope,
            "intercept": self.intercept,
            "hist_counts": self.hist_counts.tolist(),
            "hist_edges": self.hist_edges.tolist(),
        }


def qq_r2(values, kind="raw", bins=10):
    """QQ diagnostic: ordered values against normal plotting-position
    quantiles at i/(n+1), with an OLS line. R-squared is the squared
    correlation between the two quantile sequences."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    n = v.shape[0]
    if n < 3:
        raise ValidationError("QQ diagnostic needs at least 3 values")
    if v[0] == v[-1]:
        raise ValidationError("QQ diagnostic undefined for constant input")
    theo = normal_quantile(np.arange(1, n + 1) / (n + 1.0))
    tc = theo - theo.mean()
    vc = v - v.mean()
    stt = float(tc @ tc)
    slope = float(tc @ vc) / stt
    intercept = float(v.mean() - slope * theo.mean())
    r = float(tc @ vc) / math.sqrt(stt * float(vc @ vc))
    counts, edges = np.histogram(v, bins=bins)
    return NormalityDiagnostic(
        kind=kind,
        r2=r * r,
        slope=slope,
        intercept=intercept,
        hist_counts=counts,
        hist_edges=edges,
    )
