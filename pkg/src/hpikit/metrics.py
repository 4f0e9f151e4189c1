"""Evaluation metric suite: error magnitudes, goodness of fit, information
criteria, concordance, residual normality, and reduced chi-squared.

Individually undefined metrics surface as per-metric flags in the full
report instead of failing the whole evaluation.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import kolmogorov

from .data import ValidationError
from .transforms import normal_cdf

#: Sentinel used for AIC/BIC when SSE is exactly zero.
NEG_INF = float("-inf")


def _paired(y, yhat):
    y = np.asarray(y, dtype=np.float64)
    yhat = np.asarray(yhat, dtype=np.float64)
    if y.shape != yhat.shape or y.ndim != 1 or y.shape[0] < 1:
        raise ValidationError("need equal-length 1-d vectors")
    return y, yhat


def error_metrics(y, yhat):
    """RMSE, MAE, MedAE, MaxError, and MAPE (as a fraction).

    MAPE is undefined when any observed value is zero.
    """
    y, yhat = _paired(y, yhat)
    err = np.abs(y - yhat)
    out = {
        "RMSE": float(np.sqrt(np.mean(err * err))),
        "MAE": float(err.mean()),
        "MedAE": float(np.median(err)),
        "MaxError": float(err.max()),
    }
    if np.any(y == 0.0):
        raise ValidationError("MAPE undefined: observed values contain zero")
    out["MAPE"] = float(np.mean(err / np.abs(y)))
    return out


def r_squared(y, yhat):
    y, yhat = _paired(y, yhat)
    ss_res = float(np.sum((y - yhat) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        raise ValidationError("R^2 undefined for a constant observed vector")
    return 1.0 - ss_res / ss_tot


def fit_metrics(y, yhat, p, k):
    """R^2, adjusted R^2, AIC and BIC.

    p is the predictor count (adjusted R^2), k the fitted parameter count
    (information criteria). SSE = 0 maps AIC/BIC to a -inf sentinel.
    """
    y, yhat = _paired(y, yhat)
    n = y.shape[0]
    r2 = r_squared(y, yhat)
    if n <= p + 1:
        raise ValidationError(f"adjusted R^2 needs n > p+1 (n={n}, p={p})")
    adj = 1.0 - (1.0 - r2) * (n - 1) / (n - p - 1)
    sse = float(np.sum((y - yhat) ** 2))
    if sse == 0.0:
        return {"R2": r2, "adj_R2": adj, "AIC": NEG_INF, "BIC": NEG_INF}
    aic = n * math.log(sse / n) + 2 * k
    bic = n * math.log(sse / n) + k * math.log(n)
    return {"R2": r2, "adj_R2": adj, "AIC": aic, "BIC": bic}


def ccc(y, yhat):
    """Concordance correlation: 2 cov / (var_y + var_yhat + bias^2).

    Population (ddof=0) moments throughout, which keeps |CCC| <= 1.
    """
    y, yhat = _paired(y, yhat)
    if y.shape[0] < 2:
        raise ValidationError("CCC needs n >= 2")
    my, mh = y.mean(), yhat.mean()
    vy = float(np.mean((y - my) ** 2))
    vh = float(np.mean((yhat - mh) ** 2))
    cov = float(np.mean((y - my) * (yhat - mh)))
    denom = vy + vh + (my - mh) ** 2
    if denom == 0.0:
        raise ValidationError("CCC undefined: both vectors constant and equal")
    return 2.0 * cov / denom


def ks_test(residuals, fitted=True):
    """Kolmogorov-Smirnov distance of the residuals to a normal reference.

    With ``fitted=True`` (default) the reference is N(mean, sd) with both
    moments estimated from the residuals (sd uses ddof=1); ``fitted=False``
    compares against the standard normal. The p-value uses the asymptotic
    Kolmogorov distribution of sqrt(n) * D.
    """
    r = np.sort(np.asarray(residuals, dtype=np.float64))
    n = r.shape[0]
    if n < 3:
        raise ValidationError("KS test needs n >= 3")
    if fitted:
        m = r.mean()
        s = r.std(ddof=1)
        if s == 0.0:
            raise ValidationError("KS test undefined for zero-variance residuals")
        cdf = normal_cdf((r - m) / s)
    else:
        cdf = normal_cdf(r)
    steps = np.arange(1, n + 1) / n
    d = float(np.max(np.maximum(steps - cdf, cdf - (steps - 1.0 / n))))
    p = float(kolmogorov(math.sqrt(n) * d))
    return {"KS_stat": d, "KS_pvalue": min(max(p, 0.0), 1.0)}


def reduced_chi2(y, yhat, k):
    """Sum of squared residuals over (n - k) times the residual variance.

    The variance convention is the ddof=1 sample variance of the residuals
    themselves, making the statistic scale-invariant.
    """
    y, yhat = _paired(y, yhat)
    n = y.shape[0]
    if n <= k:
        raise ValidationError(f"reduced chi-squared needs n > k (n={n}, k={k})")
    r = y - yhat
    sigma2 = float(r.var(ddof=1))
    if sigma2 == 0.0:
        raise ValidationError("reduced chi-squared undefined: zero residual variance")
    return float(np.sum(r * r)) / ((n - k) * sigma2)


#: Row order of the tabular report.
REPORT_ROWS = (
    "RMSE",
    "MAE",
    "MedAE",
    "MaxError",
    "MAPE",
    "R2",
    "adj_R2",
    "AIC",
    "BIC",
    "CCC",
    "KS_stat",
    "KS_pvalue",
    "reduced_chi2",
)


@dataclass(frozen=True)
class MetricsReport:
    values: dict  # metric name -> float (may hold the -inf sentinel)
    undefined: dict  # metric name -> reason, for metrics that could not be computed
    n: int
    p: int
    k: int
    variance_convention: str = "residual ddof=1"

    def to_dict(self):
        vals = {
            name: (None if name in self.undefined else self.values.get(name))
            for name in REPORT_ROWS
        }
        return {
            "metrics": vals,
            "undefined": dict(self.undefined),
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "variance_convention": self.variance_convention,
        }


def full_report(y, yhat, p, k):
    """All metrics at once; undefined components are flagged, not fatal."""
    y, yhat = _paired(y, yhat)
    values = {}
    undefined = {}

    def attempt(fn, *args, **kw):
        try:
            res = fn(*args, **kw)
        except ValidationError as exc:
            return None, str(exc)
        return res, None

    res, why = attempt(error_metrics, y, yhat)
    if res:
        values.update(res)
    else:
        # retry without MAPE: the other four are still defined
        err = np.abs(y - yhat)
        values.update(
            RMSE=float(np.sqrt(np.mean(err * err))),
            MAE=float(err.mean()),
            MedAE=float(np.median(err)),
            MaxError=float(err.max()),
        )
        undefined["MAPE"] = why

    res, why = attempt(fit_metrics, y, yhat, p, k)
    if res:
        values.update(res)
    else:
        for name in ("R2", "adj_R2", "AIC", "BIC"):
            undefined[name] = why

    res, why = attempt(ccc, y, yhat)
    if res is not None:
        values["CCC"] = res
    else:
        undefined["CCC"] = why

    res, why = attempt(ks_test, y - yhat)
    if res:
        values.update(res)
    else:
        undefined["KS_stat"] = undefined["KS_pvalue"] = why

    res, why = attempt(reduced_chi2, y, yhat, k)
    if res is not None:
        values["reduced_chi2"] = res
    else:
        undefined["reduced_chi2"] = why

    return MetricsReport(
        values=values, undefined=undefined, n=y.shape[0], p=p, k=k
    )
