"""Density-based clustering of z-scored metal profiles and per-cluster
dominant-metal identification.

DBSCAN semantics: a core point has at least ``min_samples`` points
(counting itself) within Euclidean distance eps; clusters are maximal
density-connected sets. Seeds are scanned in row order and clusters expanded
breadth-first, so a border point reachable from several clusters joins the
lowest-numbered one. Unreachable points keep the noise label -1.
"""

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .data import METALS, ValidationError, fit_standardiser

NOISE = -1


def dbscan(X, eps, min_samples):
    """Cluster rows of X; returns integer labels with -1 for noise."""
    if eps <= 0.0:
        raise ValidationError(f"eps must be > 0, got {eps}")
    if min_samples < 1:
        raise ValidationError(f"min_samples must be >= 1, got {min_samples}")
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    d2 = (
        np.einsum("ij,ij->i", X, X)[:, None]
        + np.einsum("ij,ij->i", X, X)[None, :]
        - 2.0 * (X @ X.T)
    )
    np.maximum(d2, 0.0, out=d2)
    within = d2 <= eps * eps
    neighbour_count = within.sum(axis=1)
    core = neighbour_count >= min_samples

    labels = np.full(n, NOISE, dtype=np.int64)
    assigned = np.zeros(n, dtype=bool)
    cluster = 0
    for seed in range(n):
        if assigned[seed] or not core[seed]:
            continue
        labels[seed] = cluster
        assigned[seed] = True
        queue = deque([seed])
        while queue:
            p = queue.popleft()
            for q in np.nonzero(within[p])[0]:
                if assigned[q]:
                    continue
                labels[q] = cluster
                assigned[q] = True
                if core[q]:
                    queue.append(q)
        cluster += 1
    return labels


@dataclass(frozen=True)
class ClusterResult:
    metals: tuple
    labels: np.ndarray
    cluster_ids: tuple  # includes -1 when noise exists
    centroids_scaled: dict  # cluster id -> vector in z-score space
    centroids_raw: dict  # cluster id -> vector in mg/L
    dominant: dict  # cluster id -> metal name
    dominance_tied: dict  # cluster id -> bool
    eps: float
    min_samples: int

    def to_dict(self):
        return {
            "metals": list(self.metals),
            "labels": self.labels.tolist(),
            "clusters": [
                {
                    "id": int(c),
                    "centroid_scaled": self.centroids_scaled[c].tolist(),
                    "centroid_raw": self.centroids_raw[c].tolist(),
                    "dominant_metal": self.dominant[c],
                    "dominance_tied": bool(self.dominance_tied[c]),
                    "size": int(np.count_nonzero(self.labels == c)),
                }
                for c in self.cluster_ids
            ],
            "eps": self.eps,
            "min_samples": self.min_samples,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def dominance(table, eps=0.5, min_samples=10, standardiser=None):
    """Full dominance analysis of a sample table.

    z-scores the metal matrix (fitting a standardiser unless one is given),
    clusters with DBSCAN, computes per-cluster centroids in scaled space,
    maps them back to concentration units, and takes the largest-centroid
    metal per cluster. The noise group, when present, is profiled the same
    way under id -1. Centroid ties pick the first metal in canonical order
    and set a tie flag.
    """
    if table.n < min_samples:
        raise ValidationError(
            f"need at least min_samples={min_samples} rows, got {table.n}"
        )
    if standardiser is None:
        standardiser = fit_standardiser(table.metals, column_names=METALS)
    Xz = standardiser.apply(table.metals)
    labels = dbscan(Xz, eps, min_samples)
    ids = sorted(set(labels.tolist()))
    centroids_scaled = {}
    centroids_raw = {}
    dominant = {}
    tied = {}
    for c in ids:
        member = Xz[labels == c]
        mu_scaled = member.mean(axis=0)
        mu_raw = standardiser.invert(mu_scaled)
        j = int(np.argmax(mu_raw))
        centroids_scaled[c] = mu_scaled
        centroids_raw[c] = mu_raw
        dominant[c] = METALS[j]
        tied[c] = bool(np.count_nonzero(mu_raw == mu_raw[j]) > 1)
    return ClusterResult(
        metals=METALS,
        labels=labels,
        cluster_ids=tuple(ids),
        centroids_scaled=centroids_scaled,
        centroids_raw=centroids_raw,
        dominant=dominant,
        dominance_tied=tied,
        eps=eps,
        min_samples=min_samples,
    )
