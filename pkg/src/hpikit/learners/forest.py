"""Random forest regression: bagged SSE trees with per-node feature
subsampling (p/3 features per split, at least one)."""

import numpy as np

from .base import Model, register
from .cart import CartModel, fit_cart


def default_m_try(p):
    return max(1, p // 3)


class ForestModel(Model):
    def __init__(self, trees, seed, n_trees, max_depth, m_try, n_features):
        self.trees = list(trees)
        self.seed = seed
        self.n_trees = int(n_trees)
        self.max_depth = max_depth
        self.m_try = int(m_try)
        self.n_features = int(n_features)

    def predict(self, X):
        X = self._check(X)
        acc = np.zeros(X.shape[0])
        for tree in self.trees:
            acc += tree.predict(X)
        return acc / len(self.trees)

    def param_count(self):
        # average leaf count across the ensemble
        return max(1, round(sum(t.n_leaves() for t in self.trees) / len(self.trees)))

    def hyperparameters(self):
        return {
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "m_try": self.m_try,
            "seed": self.seed,
        }

    def _state(self):
        return {
            "n_features": self.n_features,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def _from_state(cls, hyper, state):
        trees = [
            CartModel._from_state(d["hyperparameters"], d["parameters"])
            for d in state["trees"]
        ]
        return cls(
            trees=trees,
            seed=hyper.get("seed"),
            n_trees=hyper["n_trees"],
            max_depth=hyper.get("max_depth"),
            m_try=hyper["m_try"],
            n_features=state["n_features"],
        )


def fit_random_forest(
    X,
    y,
    n_trees=200,
    max_depth=None,
    min_samples_split=2,
    min_samples_leaf=1,
    m_try=None,
    seed=0,
):
    """Each tree sees a bootstrap resample of size n; its RNG stream is
    derived from (seed, tree index), so results do not depend on evaluation
    order or worker count."""
    n, p = X.shape
    if m_try is None:
        m_try = default_m_try(p)
    streams = np.random.SeedSequence(seed).spawn(n_trees)
    trees = []
    for child in streams:
        rng = np.random.Generator(np.random.PCG64(child))
        boot = rng.integers(0, n, size=n)
        tree = fit_cart(
            np.ascontiguousarray(X[boot]),
            np.ascontiguousarray(y[boot]),
            max_depth=max_depth,
            min_samples_split=min_samples_split,
            min_samples_leaf=min_samples_leaf,
            feature_rng=rng,
            m_try=m_try,
        )
        trees.append(tree.bind_feature_count(p))
    return ForestModel(
        trees=trees,
        seed=seed,
        n_trees=n_trees,
        max_depth=max_depth,
        m_try=m_try,
        n_features=p,
    )


register("random_forest", fit_random_forest, ForestModel)
