"""Pure NumPy implementations of the hot-path kernels.

These mirror the compiled versions operation for operation. Sequential
accumulations (cumulative sums, pairwise SMO updates) are expressed so the
two backends select identical splits and working pairs; dot-product based
routines (coordinate descent) agree to rounding noise only.
"""

import numpy as np

NEG_INF = float("-inf")


def cart_best_split(X, y, rows, features, min_leaf):
    """Best SSE-reducing axis-aligned split over the given rows.

    Candidate thresholds are midpoints between consecutive distinct sorted
    feature values; both children must keep at least ``min_leaf`` rows.
    Returns ``(feature, threshold, gain)`` with ``feature=-1`` when no valid
    candidate exists. Ties keep the first candidate in (feature order,
    ascending threshold) order.
    """
    m = rows.shape[0]
    best_f = -1
    best_thr = np.nan
    best_gain = NEG_INF
    if m < 2 * min_leaf:
        return best_f, best_thr, best_gain
    yr = y[rows]
    lo = min_leaf - 1
    hi = m - min_leaf
    pos = np.arange(lo, hi)
    n_left = (pos + 1).astype(np.float64)
    n_right = np.float64(m) - n_left
    for f in features:
        v = X[rows, f]
        order = np.argsort(v, kind="stable")
        vs = v[order]
        cs = np.cumsum(yr[order])
        total = cs[-1]
        valid = vs[lo:hi] < vs[lo + 1 : hi + 1]
        if not valid.any():
            continue
        s_left = cs[lo:hi]
        s_right = total - s_left
        proxy = s_left * s_left / n_left + s_right * s_right / n_right
        gain = proxy - total * total / np.float64(m)
        gain = np.where(valid, gain, NEG_INF)
        k = int(np.argmax(gain))
        if gain[k] > best_gain:
            best_gain = float(gain[k])
            best_f = int(f)
            best_thr = float(0.5 * (vs[lo + k] + vs[lo + k + 1]))
    return best_f, best_thr, best_gain


def tree_traverse(feature, threshold, left, right, value, X):
    """Route every row of X through a flat-array tree; rows with
    ``x[feature] <= threshold`` go left. Leaves have ``feature == -1``."""
    n = X.shape[0]
    idx = np.zeros(n, dtype=np.int64)
    active = np.nonzero(feature[idx] >= 0)[0]
    while active.size:
        node = idx[active]
        go_left = X[active, feature[node]] <= threshold[node]
        nxt = np.where(go_left, left[node], right[node])
        idx[active] = nxt
        active = active[feature[nxt] >= 0]
    return value[idx]


def svr_smo(K, y, C, eps, tol, max_iter):
    """SMO solver for the epsilon-insensitive SVR dual.

    Works on the doubled variable vector (upper-tube and lower-tube
    multipliers, each box-constrained to [0, C], coupled by a zero-sum
    constraint) and repeatedly optimises the maximal-violating pair.

    Returns ``(beta, b, iterations, gap)`` where ``beta`` are the net dual
    coefficients, ``b`` the bias, and ``gap`` the final KKT violation.
    Convergence means ``gap <= tol``; the caller decides how to treat
    non-convergence.
    """
    n = y.shape[0]
    alpha = np.zeros(2 * n)
    # gradient of the dual objective; starts at the linear term
    g = np.empty(2 * n)
    g[:n] = eps - y
    g[n:] = eps + y
    neg_sg = np.empty(2 * n)
    it = 0
    while True:
        neg_sg[:n] = -g[:n]
        neg_sg[n:] = g[n:]
        up = np.concatenate((alpha[:n] < C, alpha[n:] > 0.0))
        low = np.concatenate((alpha[:n] > 0.0, alpha[n:] < C))
        up_vals = np.where(up, neg_sg, NEG_INF)
        low_vals = np.where(low, neg_sg, np.inf)
        i = int(np.argmax(up_vals))
        j = int(np.argmin(low_vals))
        m_up = up_vals[i]
        m_low = low_vals[j]
        gap = m_up - m_low
        if gap <= tol or it >= max_iter:
            break
        ii = i % n
        jj = j % n
        a = K[ii, ii] + K[jj, jj] - 2.0 * K[ii, jj]
        if a <= 0.0:
            a = 1e-12
        d = (neg_sg[i] - neg_sg[j]) / a
        cap_i = (C - alpha[i]) if i < n else alpha[i]
        cap_j = alpha[j] if j < n else (C - alpha[j])
        if d > cap_i:
            d = cap_i
        if d > cap_j:
            d = cap_j
        alpha[i] += d if i < n else -d
        alpha[j] += -d if j < n else d
        dk = d * (K[:, ii] - K[:, jj])
        g[:n] += dk
        g[n:] -= dk
        it += 1
    free = (alpha > 0.0) & (alpha < C)
    if free.any():
        tot = 0.0
        cnt = 0
        for t in np.nonzero(free)[0]:
            tot += neg_sg[t]
            cnt += 1
        b = tot / cnt
    else:
        b = 0.5 * (m_up + m_low)
    beta = alpha[:n] - alpha[n:]
    return beta, float(b), it, float(gap)


def enet_cd(X, y, l1, l2, tol, max_iter):
    """Cyclic coordinate descent for the elastic-net objective

        (1/2n) ||y - X beta||^2 + l1 ||beta||_1 + (l2/2) ||beta||^2

    on pre-centred X, y. Converged when the largest coefficient change in a
    sweep drops below ``tol``. Returns ``(beta, sweeps, converged)``.
    """
    n, p = X.shape
    beta = np.zeros(p)
    r = y.copy()
    col_sq = np.einsum("ij,ij->j", X, X)
    inv_n = 1.0 / n
    for sweep in range(1, max_iter + 1):
        max_delta = 0.0
        for j in range(p):
            cj = col_sq[j]
            denom = cj * inv_n + l2
            if denom <= 0.0:
                continue
            bj = beta[j]
            rho = (X[:, j] @ r) * inv_n + cj * inv_n * bj
            if rho > l1:
                new = (rho - l1) / denom
            elif rho < -l1:
                new = (rho + l1) / denom
            else:
                new = 0.0
            delta = new - bj
            if delta != 0.0:
                r -= X[:, j] * delta
                beta[j] = new
                ad = abs(delta)
                if ad > max_delta:
                    max_delta = ad
        if max_delta < tol:
            return beta, sweep, True
    return beta, max_iter, False
