"""Independent reference implementations used as test oracles.

These deliberately avoid the library's code paths: ranks are built by
explicit grouping, trees by literal SSE enumeration, DBSCAN from the
definition via union-find, and tail probabilities by quadrature.
"""

import itertools
import math

import numpy as np


def rank_average(x):
    """Average ranks by explicit sort-and-group."""
    x = list(map(float, x))
    n = len(x)
    order = sorted(range(n), key=lambda i: x[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and x[order[j + 1]] == x[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        for t in range(i, j + 1):
            ranks[order[t]] = avg
        i = j + 1
    return ranks


def pearson(a, b):
    n = len(a)
    ma = sum(a) / n
    mb = sum(b) / n
    num = sum((a[i] - ma) * (b[i] - mb) for i in range(n))
    da = sum((a[i] - ma) ** 2 for i in range(n))
    db = sum((b[i] - mb) ** 2 for i in range(n))
    return num / math.sqrt(da * db)


def spearman_oracle(x, y):
    return pearson(rank_average(x), rank_average(y))


def spearman_no_ties(x, y):
    """1 - 6 sum d^2 / (n(n^2-1)); valid only for tie-free inputs."""
    rx = rank_average(x)
    ry = rank_average(y)
    n = len(rx)
    d2 = sum((rx[i] - ry[i]) ** 2 for i in range(n))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0))


def perm_pvalue_exact(x, y):
    """Exhaustive two-sided permutation p-value with add-one smoothing."""
    obs = abs(spearman_oracle(x, y))
    hits = 0
    total = 0
    for perm in itertools.permutations(y):
        total += 1
        if abs(spearman_oracle(x, perm)) >= obs - 1e-12:
            hits += 1
    return (1 + hits) / (1 + total)


def t_sf_quadrature(t_value, df, grid=400_000, span=80.0):
    """P(T > t) for Student's t via trapezoidal quadrature of the density."""

    def density(u):
        c = math.exp(
            math.lgamma((df + 1) / 2.0)
            - math.lgamma(df / 2.0)
            - 0.5 * math.log(df * math.pi)
        )
        return c * (1.0 + u * u / df) ** (-(df + 1) / 2.0)

    xs = np.linspace(t_value, t_value + span, grid)
    ys = np.array([density(u) for u in xs])
    return float(np.trapezoid(ys, xs))


def ridge_closed_form(X, y, lam):
    """Centred ridge: beta = (Xc'Xc + n lam I)^-1 Xc'y, intercept from means."""
    n = X.shape[0]
    xm = X.mean(axis=0)
    ym = y.mean()
    Xc = X - xm
    yc = y - ym
    beta = np.linalg.solve(Xc.T @ Xc + n * lam * np.eye(X.shape[1]), Xc.T @ yc)
    return beta, ym - float(beta @ xm)


def ols_closed_form(X, y):
    n = X.shape[0]
    A = np.hstack([X, np.ones((n, 1))])
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    return sol[:-1], float(sol[-1])


def lasso_single_feature(x, y, lam):
    """Soft-threshold solution for one centred predictor."""
    xm = x.mean()
    ym = y.mean()
    xc = x - xm
    yc = y - ym
    n = x.shape[0]
    rho = float(xc @ yc) / n
    cj = float(xc @ xc) / n
    if rho > lam:
        beta = (rho - lam) / cj
    elif rho < -lam:
        beta = (rho + lam) / cj
    else:
        beta = 0.0
    return beta, ym - beta * xm


def sse(values):
    v = np.asarray(values, dtype=np.float64)
    return float(np.sum((v - v.mean()) ** 2))


def cart_reference(X, y, max_depth=None, min_samples_split=2, min_samples_leaf=1):
    """Greedy tree via literal SSE enumeration of every (feature, midpoint)
    split. Returns nested dicts; ties keep the first candidate in
    (feature, threshold) order."""

    def best_split(rows):
        base = sse(y[rows])
        best = None
        for f in range(X.shape[1]):
            vals = sorted(set(X[rows, f]))
            for a, b in zip(vals[:-1], vals[1:]):
                thr = (a + b) / 2.0
                left = rows[X[rows, f] <= thr]
                right = rows[X[rows, f] > thr]
                if len(left) < min_samples_leaf or len(right) < min_samples_leaf:
                    continue
                gain = base - sse(y[left]) - sse(y[right])
                if best is None or gain > best[0] + 1e-12:
                    best = (gain, f, thr, left, right)
        return best

    def grow(rows, depth):
        node = {"value": float(y[rows].mean()), "n": len(rows)}
        if (
            len(rows) < min_samples_split
            or (max_depth is not None and depth >= max_depth)
            or np.all(y[rows] == y[rows][0])
        ):
            return node
        found = best_split(rows)
        if found is None or not found[0] > 0.0:
            return node
        _, f, thr, left, right = found
        node["feature"] = int(f)
        node["threshold"] = float(thr)
        node["left"] = grow(left, depth + 1)
        node["right"] = grow(right, depth + 1)
        return node

    return grow(np.arange(X.shape[0]), 0)


def cart_reference_predict(tree, x):
    node = tree
    while "feature" in node:
        node = node["left"] if x[node["feature"]] <= node["threshold"] else node["right"]
    return node["value"]


def dbscan_reference(X, eps, min_samples):
    """DBSCAN from the definition: cores by neighbour count, clusters as
    connected components of cores (union-find), borders attached to the
    lowest-numbered cluster among their core neighbours."""
    n = X.shape[0]
    d = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
    within = d <= eps
    core = within.sum(axis=1) >= min_samples

    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    core_idx = np.nonzero(core)[0]
    for i in core_idx:
        for j in core_idx:
            if j > i and within[i, j]:
                union(i, j)

    # number components by their smallest core index, ascending
    roots = {}
    for i in core_idx:
        roots.setdefault(find(i), []).append(i)
    comp_order = sorted(roots.values(), key=min)
    cluster_of_core = {}
    for cid, members in enumerate(comp_order):
        for i in members:
            cluster_of_core[i] = cid

    labels = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        if core[i]:
            labels[i] = cluster_of_core[i]
        else:
            owners = [cluster_of_core[j] for j in core_idx if within[i, j]]
            if owners:
                labels[i] = min(owners)
    return labels


def ks_sup_reference(residuals, fitted=True):
    """Brute-force sup over the jump points of the empirical CDF."""
    from scipy.special import erfc as _erfc

    r = np.asarray(residuals, dtype=np.float64)
    n = r.shape[0]
    if fitted:
        m = r.mean()
        s = r.std(ddof=1)
    else:
        m, s = 0.0, 1.0

    def phi(x):
        return 0.5 * _erfc(-(x - m) / (s * math.sqrt(2.0)))

    best = 0.0
    for x in r:
        fn_at = np.count_nonzero(r <= x) / n
        fn_before = np.count_nonzero(r < x) / n
        best = max(best, abs(fn_at - phi(x)), abs(fn_before - phi(x)))
    return best
