"""Regression tree grown by greedy SSE-minimising binary splits.

Thresholds are midpoints between consecutive distinct sorted feature values;
leaves predict the mean target of their rows. Split ties keep the first
candidate in (feature index, threshold) order, so the tree is deterministic.
An optional per-node feature subsample (used by the random forest) is drawn
from a caller-supplied generator.
"""

import numpy as np

from .. import _kernels
from ..data import ValidationError
from .base import Model, register


class CartModel(Model):
    """Flat-array binary tree: feature[i] == -1 marks a leaf."""

    def __init__(
        self, feature, threshold, left, right, value, n_node, max_depth,
        min_samples_split, min_samples_leaf,
    ):
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.value = np.asarray(value, dtype=np.float64)
        self.n_node = np.asarray(n_node, dtype=np.int64)
        self.max_depth = max_depth
        self.min_samples_split = int(min_samples_split)
        self.min_samples_leaf = int(min_samples_leaf)
        self.n_features = int(self.feature.max() + 1) if self.feature.size else 1

    def bind_feature_count(self, p):
        self.n_features = int(p)
        return self

    def predict(self, X):
        X = self._check(X)
        return _kernels.tree_traverse(
            self.feature, self.threshold, self.left, self.right, self.value, X
        )

    def n_leaves(self):
        return int(np.count_nonzero(self.feature < 0))

    def param_count(self):
        return self.n_leaves()

    def hyperparameters(self):
        return {
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "min_samples_leaf": self.min_samples_leaf,
        }

    def _state(self):
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
            "n_node": self.n_node.tolist(),
            "n_features": self.n_features,
        }

    @classmethod
    def _from_state(cls, hyper, state):
        model = cls(
            feature=state["feature"],
            threshold=state["threshold"],
            left=state["left"],
            right=state["right"],
            value=state["value"],
            n_node=state["n_node"],
            max_depth=hyper.get("max_depth"),
            min_samples_split=hyper.get("min_samples_split", 2),
            min_samples_leaf=hyper.get("min_samples_leaf", 1),
        )
        return model.bind_feature_count(state["n_features"])


def fit_cart(
    X,
    y,
    max_depth=None,
    min_samples_split=2,
    min_samples_leaf=1,
    feature_rng=None,
    m_try=None,
):
    """Grow the tree depth-first (left child before right).

    ``max_depth=None`` means unlimited; a node at depth d may split only if
    d < max_depth. ``feature_rng``/``m_try`` enable per-node random feature
    subsets for forests; by default every feature is a candidate.
    """
    if min_samples_split < 2:
        raise ValidationError("min_samples_split must be >= 2")
    if min_samples_leaf < 1:
        raise ValidationError("min_samples_leaf must be >= 1")
    if max_depth is not None and max_depth < 1:
        raise ValidationError("max_depth must be >= 1 or None")
    n, p = X.shape
    all_features = np.arange(p, dtype=np.int64)

    feature = []
    threshold = []
    left = []
    right = []
    value = []
    n_node = []

    def new_node():
        feature.append(-1)
        threshold.append(np.nan)
        left.append(-1)
        right.append(-1)
        value.append(0.0)
        n_node.append(0)
        return len(feature) - 1

    # stack of (node_id, rows, depth); children pushed right-first so the
    # left subtree is laid out immediately after its parent
    root = new_node()
    stack = [(root, np.arange(n, dtype=np.int64), 0)]
    while stack:
        node, rows, depth = stack.pop()
        yr = y[rows]
        value[node] = float(yr.mean())
        n_node[node] = rows.shape[0]
        if (
            rows.shape[0] < min_samples_split
            or (max_depth is not None and depth >= max_depth)
            or yr.max() == yr.min()
        ):
            continue
        if feature_rng is not None and m_try is not None and m_try < p:
            cand = np.sort(
                feature_rng.choice(p, size=m_try, replace=False)
            ).astype(np.int64)
        else:
            cand = all_features
        f, thr, gain = _kernels.cart_best_split(X, y, rows, cand, min_samples_leaf)
        if f < 0 or not gain > 0.0:
            continue
        mask = X[rows, f] <= thr
        n_left = int(mask.sum())
        if n_left < min_samples_leaf or rows.shape[0] - n_left < min_samples_leaf:
            continue  # midpoint rounded onto a sample value; keep the leaf
        feature[node] = int(f)
        threshold[node] = float(thr)
        left_id = new_node()
        right_id = new_node()
        left[node] = left_id
        right[node] = right_id
        stack.append((right_id, rows[~mask], depth + 1))
        stack.append((left_id, rows[mask], depth + 1))

    model = CartModel(
        feature, threshold, left, right, value, n_node,
        max_depth, min_samples_split, min_samples_leaf,
    )
    return model.bind_feature_count(p)


register("cart", fit_cart, CartModel)
