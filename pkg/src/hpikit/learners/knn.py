"""k-nearest-neighbour regression with uniform or inverse-distance weights."""

import numpy as np

from ..data import ValidationError
from .base import Model, register

WEIGHT_MODES = ("uniform", "distance")
METRICS = ("euclidean", "manhattan")


class KnnModel(Model):
    def __init__(self, train_x, train_y, k, weights, metric):
        self.train_x = np.asarray(train_x, dtype=np.float64)
        self.train_y = np.asarray(train_y, dtype=np.float64)
        self.k = int(k)
        self.weights = weights
        self.metric = metric
        self.n_features = self.train_x.shape[1]

    def predict(self, X):
        X = self._check(X)
        if self.metric == "euclidean":
            d = np.sqrt(
                np.maximum(
                    np.einsum("ij,ij->i", X, X)[:, None]
                    + np.einsum("ij,ij->i", self.train_x, self.train_x)[None, :]
                    - 2.0 * (X @ self.train_x.T),
                    0.0,
                )
            )
        else:
            d = np.abs(X[:, None, :] - self.train_x[None, :, :]).sum(axis=2)
        # stable sort: equal distances resolve to the lower training index
        nearest = np.argsort(d, axis=1, kind="stable")[:, : self.k]
        rows = np.arange(X.shape[0])[:, None]
        nd = d[rows, nearest]
        ny = self.train_y[nearest]
        if self.weights == "uniform":
            return ny.mean(axis=1)
        out = np.empty(X.shape[0])
        exact = nd <= 0.0
        has_exact = exact.any(axis=1)
        for i in range(X.shape[0]):
            if has_exact[i]:
                out[i] = ny[i, exact[i]].mean()
            else:
                w = 1.0 / nd[i]
                out[i] = float(w @ ny[i]) / float(w.sum())
        return out

    def param_count(self):
        # neighbourhood averaging acts like n/k fitted constants
        return max(1, round(self.train_y.shape[0] / self.k))

    def hyperparameters(self):
        return {"k": self.k, "weights": self.weights, "metric": self.metric}

    def _state(self):
        return {"train_x": self.train_x.tolist(), "train_y": self.train_y.tolist()}

    @classmethod
    def _from_state(cls, hyper, state):
        return cls(
            train_x=np.asarray(state["train_x"], dtype=np.float64).reshape(
                len(state["train_x"]), -1
            ),
            train_y=state["train_y"],
            k=hyper["k"],
            weights=hyper["weights"],
            metric=hyper["metric"],
        )


def fit_knn(X, y, k=5, weights="uniform", metric="euclidean"):
    if k < 1 or k > X.shape[0]:
        raise ValidationError(f"k must lie in [1, n={X.shape[0]}], got {k}")
    if weights not in WEIGHT_MODES:
        raise ValidationError(f"weights must be one of {WEIGHT_MODES}")
    if metric not in METRICS:
        raise ValidationError(f"metric must be one of {METRICS}")
    return KnnModel(X, y, k, weights, metric)


register("knn", fit_knn, KnnModel)
