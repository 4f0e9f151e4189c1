"""Penalised linear learners (elastic net, lasso) via coordinate descent,
plus the constant-mean baseline."""

import numpy as np

from .. import _kernels
from ..data import ValidationError
from .base import FitError, Model, register

CD_TOL = 1e-8
CD_MAX_SWEEPS = 100_000


class LinearModel(Model):
    """y ~ X beta + intercept with an elastic-net penalty on beta."""

    def __init__(self, coef, intercept, alpha, l1_ratio):
        self.coef = np.asarray(coef, dtype=np.float64)
        self.intercept = float(intercept)
        self.alpha = float(alpha)
        self.l1_ratio = float(l1_ratio)
        self.n_features = self.coef.shape[0]

    def predict(self, X):
        return self._check(X) @ self.coef + self.intercept

    def param_count(self):
        # nonzero coefficients plus the intercept
        return int(np.count_nonzero(self.coef)) + 1

    def hyperparameters(self):
        return {"alpha": self.alpha, "l1_ratio": self.l1_ratio}

    def _state(self):
        return {"coef": self.coef.tolist(), "intercept": self.intercept}

    @classmethod
    def _from_state(cls, hyper, state):
        return cls(
            coef=state["coef"],
            intercept=state["intercept"],
            alpha=hyper.get("alpha", 0.0),
            l1_ratio=hyper.get("l1_ratio", 1.0),
        )


class LassoModel(LinearModel):
    """Same estimator with the penalty pinned to pure l1."""


def fit_elastic_net(X, y, alpha=1.0, l1_ratio=0.5, tol=CD_TOL, max_iter=CD_MAX_SWEEPS):
    """Minimise (1/2n)||y - Xb - b0||^2 + alpha*(l1_ratio*||b||_1 +
    (1-l1_ratio)/2*||b||^2) by cyclic coordinate descent on centred data."""
    if alpha < 0.0:
        raise ValidationError(f"alpha must be >= 0, got {alpha}")
    if not 0.0 <= l1_ratio <= 1.0:
        raise ValidationError(f"l1_ratio must lie in [0, 1], got {l1_ratio}")
    beta, intercept = _cd_fit(X, y, alpha, l1_ratio, tol, max_iter)
    return LinearModel(beta, intercept, alpha, l1_ratio)


def fit_lasso(X, y, alpha=1.0, tol=CD_TOL, max_iter=CD_MAX_SWEEPS):
    if alpha < 0.0:
        raise ValidationError(f"alpha must be >= 0, got {alpha}")
    beta, intercept = _cd_fit(X, y, alpha, 1.0, tol, max_iter)
    return LassoModel(beta, intercept, alpha, 1.0)


def _cd_fit(X, y, alpha, l1_ratio, tol, max_iter):
    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    Xc = np.ascontiguousarray(X - x_mean)
    yc = np.ascontiguousarray(y - y_mean)
    beta, sweeps, converged = _kernels.enet_cd(
        Xc, yc, alpha * l1_ratio, alpha * (1.0 - l1_ratio), tol, max_iter
    )
    if not converged:
        raise FitError(
            f"coordinate descent did not converge within {sweeps} sweeps "
            f"(tol {tol:g})"
        )
    return beta, y_mean - float(beta @ x_mean)


def lasso_alpha_max(X, y):
    """Smallest alpha for which the lasso solution is exactly zero:
    max_j |X_j^T (y - mean(y))| / n."""
    Xc = X - X.mean(axis=0)
    return float(np.max(np.abs(Xc.T @ (y - y.mean())))) / X.shape[0]


class MeanModel(Model):
    """Predicts the training mean everywhere; the no-information baseline."""

    def __init__(self, value, n_features):
        self.value = float(value)
        self.n_features = int(n_features)

    def predict(self, X):
        return np.full(self._check(X).shape[0], self.value)

    def param_count(self):
        return 1

    def _state(self):
        return {"value": self.value, "n_features": self.n_features}

    @classmethod
    def _from_state(cls, hyper, state):
        return cls(state["value"], state["n_features"])


def fit_mean(X, y):
    return MeanModel(y.mean(), X.shape[1])


register("elastic_net", fit_elastic_net, LinearModel)
register("lasso", fit_lasso, LassoModel)
register("mean", fit_mean, MeanModel)
