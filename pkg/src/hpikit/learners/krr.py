"""Kernel ridge regression: dual coefficients from (K + lambda I) a = y."""

import numpy as np

from ..data import ValidationError
from .base import FitError, Model, register
from .kernels import KERNEL_KINDS, kernel_matrix

RESIDUAL_TOL = 1e-8
#: Jitter ladder added to the diagonal before giving up on the factorisation.
JITTERS = (0.0, 1e-12, 1e-10, 1e-8)


class KrrModel(Model):
    """f(x) = sum_i a_i K(x_i, x); no explicit intercept."""

    def __init__(self, train_x, dual, alpha, kernel, gamma, degree):
        self.train_x = np.asarray(train_x, dtype=np.float64)
        self.dual = np.asarray(dual, dtype=np.float64)
        self.alpha = float(alpha)
        self.kernel = kernel
        self.gamma = float(gamma)
        self.degree = int(degree)
        self.n_features = self.train_x.shape[1]

    def predict(self, X):
        X = self._check(X)
        K = kernel_matrix(self.kernel, X, self.train_x, self.gamma, self.degree)
        return K @ self.dual

    def param_count(self):
        return self.dual.shape[0]

    def hyperparameters(self):
        return {
            "alpha": self.alpha,
            "kernel": self.kernel,
            "gamma": self.gamma,
            "degree": self.degree,
        }

    def _state(self):
        return {"train_x": self.train_x.tolist(), "dual": self.dual.tolist()}

    @classmethod
    def _from_state(cls, hyper, state):
        return cls(
            train_x=np.asarray(state["train_x"], dtype=np.float64).reshape(
                len(state["train_x"]), -1
            ),
            dual=state["dual"],
            alpha=hyper["alpha"],
            kernel=hyper["kernel"],
            gamma=hyper.get("gamma", 1.0),
            degree=hyper.get("degree", 3),
        )


def fit_krr(X, y, alpha=1.0, kernel="rbf", gamma=0.1, degree=3):
    if alpha <= 0.0:
        raise ValidationError(f"ridge penalty must be > 0, got {alpha}")
    if kernel not in KERNEL_KINDS:
        raise ValidationError(f"unknown kernel {kernel!r}")
    K = kernel_matrix(kernel, X, X, gamma, degree)
    n = K.shape[0]
    system = K + alpha * np.eye(n)
    dual = None
    for jitter in JITTERS:
        try:
            chol = np.linalg.cholesky(system + jitter * np.eye(n))
        except np.linalg.LinAlgError:
            continue
        cand = _cho_solve(chol, y)
        residual = float(np.max(np.abs(system @ cand - y)))
        if residual <= RESIDUAL_TOL:
            dual = cand
            break
    if dual is None:
        raise FitError(
            f"kernel ridge system is too ill-conditioned (residual above "
            f"{RESIDUAL_TOL:g} even with diagonal jitter up to {JITTERS[-1]:g})"
        )
    return KrrModel(
        train_x=X, dual=dual, alpha=alpha, kernel=kernel, gamma=gamma, degree=degree
    )


def _cho_solve(L, y):
    return np.linalg.solve(L.T, np.linalg.solve(L, y))


register("kernel_ridge", fit_krr, KrrModel)
