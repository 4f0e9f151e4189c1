"""Tie-aware Spearman rank correlation with t and permutation inference."""

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import stdtr

from .data import METALS, ValidationError

#: Exact enumeration of all n! permutations is used up to this length.
EXACT_ENUMERATION_MAX_N = 7

DEFAULT_PERMUTATIONS = 10_000


def average_ranks(x):
    """Ranks 1..n with ties replaced by the mean rank of their block.

    The rank sum is exactly n(n+1)/2 for every input.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    order = np.argsort(x, kind="stable")
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _pearson(a, b):
    a = a - a.mean()
    b = b - b.mean()
    denom = math.sqrt(float(a @ a) * float(b @ b))
    if denom == 0.0:
        raise ValidationError("correlation undefined for a constant vector")
    return float(a @ b) / denom


def spearman(x, y):
    """Spearman's rho: Pearson correlation of the average-rank transforms.

    For tie-free data this equals 1 - 6*sum(d^2)/(n(n^2-1)).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValidationError("inputs must be equal-length 1-d vectors")
    if x.shape[0] < 3:
        raise ValidationError("need at least 3 observations")
    rho = _pearson(average_ranks(x), average_ranks(y))
    # guard against rounding pushing past the closed interval
    return min(1.0, max(-1.0, rho))


def spearman_t_pvalue(rho, n):
    """Two-sided p-value from t = rho * sqrt((n-2)/(1-rho^2)) with n-2
    degrees of freedom. |rho| = 1 is degenerate: p = 0 with a flag."""
    if n < 4:
        raise ValidationError("t approximation needs n >= 4")
    if abs(rho) >= 1.0:
        return 0.0, True
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    p = 2.0 * float(stdtr(n - 2, -abs(t)))
    return min(p, 1.0), False


def spearman_perm_pvalue(x, y, b=DEFAULT_PERMUTATIONS, seed=0):
    """Permutation p-value for H0: rho = 0 against a two-sided alternative.

    Y is permuted with X held fixed; the estimate uses add-one smoothing,
    p = (1 + #{|rho_b| >= |rho_obs|}) / (1 + B), so p is never 0. For
    n <= EXACT_ENUMERATION_MAX_N all n! permutations are enumerated instead
    of sampling (B is then n!).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if b < 1:
        raise ValidationError("permutation count must be >= 1")
    observed = abs(spearman(x, y))
    rx = average_ranks(x)
    ry = average_ranks(y)
    n = x.shape[0]
    # Pearson on ranks, recomputed against fixed rx for each permuted ry.
    rxc = rx - rx.mean()
    ryc = ry - ry.mean()
    denom = math.sqrt(float(rxc @ rxc) * float(ryc @ ryc))
    tol = 1e-12  # |rho_b| >= |rho_obs| up to rounding noise
    if n <= EXACT_ENUMERATION_MAX_N:
        hits = 0
        total = 0
        for perm in itertools.permutations(range(n)):
            rho_b = abs(float(rxc @ ryc[list(perm)]) / denom)
            hits += rho_b >= observed - tol
            total += 1
        return (1 + hits) / (1 + total)
    rng = np.random.Generator(np.random.PCG64(seed))
    hits = 0
    for _ in range(b):
        rho_b = abs(float(rxc @ ryc[rng.permutation(n)]) / denom)
        hits += rho_b >= observed - tol
    return (1 + hits) / (1 + b)


@dataclass(frozen=True)
class CorrelationReport:
    """Pairwise Spearman matrix over the metal columns with both inference
    routes and a 5% significance flag per pair (permutation-based)."""

    metals: tuple
    rho: np.ndarray
    p_t: np.ndarray
    p_perm: np.ndarray
    significant: np.ndarray
    b: int
    seed: int
    alpha: float = 0.05

    def to_dict(self):
        return {
            "metals": list(self.metals),
            "rho": self.rho.tolist(),
            "p_t": self.p_t.tolist(),
            "p_perm": self.p_perm.tolist(),
            "significant": self.significant.tolist(),
            "permutations": self.b,
            "seed": self.seed,
            "alpha": self.alpha,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def correlation_matrix(table, b=DEFAULT_PERMUTATIONS, seed=0):
    """Full Spearman correlation report over all metal pairs of a table."""
    if table.n < 4:
        raise ValidationError("correlation matrix needs n >= 4")
    X = table.metals
    p = len(METALS)
    rho = np.eye(p)
    p_t = np.zeros((p, p))
    p_perm = np.zeros((p, p))
    for i in range(p):
        for j in range(i + 1, p):
            r = spearman(X[:, i], X[:, j])
            pt, _ = spearman_t_pvalue(r, table.n)
            pp = spearman_perm_pvalue(
                X[:, i], X[:, j], b=b, seed=seed + 1000003 * (i * p + j)
            )
            rho[i, j] = rho[j, i] = r
            p_t[i, j] = p_t[j, i] = pt
            p_perm[i, j] = p_perm[j, i] = pp
    # self-correlation: p-values are degenerate, report smallest possible
    np.fill_diagonal(p_t, 0.0)
    np.fill_diagonal(p_perm, 1.0 / (1.0 + b))
    return CorrelationReport(
        metals=METALS,
        rho=rho,
        p_t=p_t,
        p_perm=p_perm,
        significant=p_perm < 0.05,
        b=b,
        seed=seed,
    )
