"""Epsilon-insensitive support vector regression with an RBF kernel,
solved in the dual by sequential minimal optimisation."""

import numpy as np

from .. import _kernels
from ..data import ValidationError
from .base import FitError, Model, register
from .kernels import kernel_matrix

SMO_TOL = 1e-3
SMO_MAX_ITER = 100_000


class SvrModel(Model):
    """f(x) = sum_i beta_i K(x_i, x) + b over the support set."""

    def __init__(self, support_x, beta, b, c, eps, gamma):
        self.support_x = np.asarray(support_x, dtype=np.float64)
        self.beta = np.asarray(beta, dtype=np.float64)
        self.b = float(b)
        self.c = float(c)
        self.eps = float(eps)
        self.gamma = float(gamma)
        self.n_features = self.support_x.shape[1]

    def predict(self, X):
        X = self._check(X)
        if self.support_x.shape[0] == 0:
            return np.full(X.shape[0], self.b)
        return kernel_matrix("rbf", X, self.support_x, self.gamma) @ self.beta + self.b

    def param_count(self):
        return self.support_x.shape[0] + 1

    def hyperparameters(self):
        return {"c": self.c, "eps": self.eps, "gamma": self.gamma}

    def _state(self):
        return {
            "support_x": self.support_x.tolist(),
            "beta": self.beta.tolist(),
            "b": self.b,
        }

    @classmethod
    def _from_state(cls, hyper, state):
        return cls(
            support_x=np.asarray(state["support_x"], dtype=np.float64).reshape(
                len(state["support_x"]), -1
            ),
            beta=state["beta"],
            b=state["b"],
            c=hyper["c"],
            eps=hyper["eps"],
            gamma=hyper["gamma"],
        )


def fit_svr(X, y, c=1.0, eps=0.1, gamma=0.1, tol=SMO_TOL, max_iter=SMO_MAX_ITER):
    if c <= 0.0 or eps < 0.0 or gamma <= 0.0:
        raise ValidationError(
            f"SVR needs c > 0, eps >= 0, gamma > 0; got c={c}, eps={eps}, "
            f"gamma={gamma}"
        )
    K = np.ascontiguousarray(kernel_matrix("rbf", X, X, gamma))
    beta, b, iters, gap = _kernels.svr_smo(K, y, c, eps, tol, max_iter)
    if gap > tol:
        raise FitError(
            f"SMO did not reach KKT tolerance {tol:g} after {iters} "
            f"iterations (violation {gap:.3g})"
        )
    keep = beta != 0.0
    return SvrModel(
        support_x=X[keep], beta=beta[keep], b=b, c=c, eps=eps, gamma=gamma
    )


register("svm", fit_svr, SvrModel)
