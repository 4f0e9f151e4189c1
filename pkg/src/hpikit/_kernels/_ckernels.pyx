# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot-path kernels; see _pykernels.py for the reference
semantics. Sequential accumulation order matches the pure backend so split
selection and SMO pair selection agree between the two."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, NAN, fabs

cnp.import_array()


def cart_best_split(double[:, ::1] X, double[::1] y, cnp.int64_t[::1] rows,
                    cnp.int64_t[::1] features, long long min_leaf):
    cdef Py_ssize_t m = rows.shape[0]
    cdef cnp.int64_t best_f = -1
    cdef double best_thr = NAN
    cdef double best_gain = -INFINITY
    if m < 2 * min_leaf:
        return -1, float("nan"), -INFINITY

    cdef cnp.ndarray[double, ndim=1] v_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] v = v_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] order_arr
    cdef cnp.int64_t[::1] order
    cdef Py_ssize_t fi, i, k
    cdef cnp.int64_t f
    cdef double total, s_left, s_right, n_left, n_right, gain, baseline
    cdef double vs_i, vs_next
    cdef cnp.ndarray[double, ndim=1] vs_arr = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ys_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] vs = vs_arr
    cdef double[::1] ys = ys_arr
    cdef Py_ssize_t lo = min_leaf - 1
    cdef Py_ssize_t hi = m - min_leaf

    for fi in range(features.shape[0]):
        f = features[fi]
        for i in range(m):
            v[i] = X[rows[i], f]
        order_arr = np.argsort(v_arr, kind="stable").astype(np.int64, copy=False)
        order = order_arr
        total = 0.0
        for i in range(m):
            vs[i] = v[order[i]]
            ys[i] = y[rows[order[i]]]
        # sequential prefix sums; identical order to the pure backend cumsum
        s_left = 0.0
        for i in range(lo + 1):
            s_left += ys[i]
        total = s_left
        for i in range(lo + 1, m):
            total += ys[i]
        baseline = total * total / (<double> m)
        for k in range(lo, hi):
            if k > lo:
                s_left += ys[k]
            vs_i = vs[k]
            vs_next = vs[k + 1]
            if vs_i < vs_next:
                n_left = <double> (k + 1)
                n_right = <double> (m - k - 1)
                s_right = total - s_left
                gain = s_left * s_left / n_left + s_right * s_right / n_right \
                    - baseline
                if gain > best_gain:
                    best_gain = gain
                    best_f = f
                    best_thr = 0.5 * (vs_i + vs_next)
    return int(best_f), float(best_thr), float(best_gain)


def tree_traverse(cnp.int64_t[::1] feature, double[::1] threshold,
                  cnp.int64_t[::1] left, cnp.int64_t[::1] right,
                  double[::1] value, double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0]
    cdef cnp.ndarray[double, ndim=1] out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef cnp.int64_t node
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]
    return out_arr


def svr_smo(double[:, ::1] K, double[::1] y, double C, double eps,
            double tol, long long max_iter):
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t n2 = 2 * n
    cdef cnp.ndarray[double, ndim=1] alpha_arr = np.zeros(n2, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] g_arr = np.empty(n2, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] neg_sg_arr = np.empty(n2, dtype=np.float64)
    cdef double[::1] alpha = alpha_arr
    cdef double[::1] g = g_arr
    cdef double[::1] neg_sg = neg_sg_arr
    cdef Py_ssize_t t, i, j, ii, jj
    cdef long long it = 0
    cdef double m_up, m_low, gap, a, d, cap_i, cap_j, dk, val, tot, b
    cdef Py_ssize_t cnt

    for t in range(n):
        g[t] = eps - y[t]
        g[n + t] = eps + y[t]

    gap = INFINITY
    m_up = -INFINITY
    m_low = INFINITY
    while True:
        for t in range(n):
            neg_sg[t] = -g[t]
            neg_sg[n + t] = g[n + t]
        i = -1
        j = -1
        m_up = -INFINITY
        m_low = INFINITY
        for t in range(n2):
            # I_up: alpha_t < C on the + side, alpha_t > 0 on the - side
            if (t < n and alpha[t] < C) or (t >= n and alpha[t] > 0.0):
                val = neg_sg[t]
                if val > m_up:
                    m_up = val
                    i = t
            if (t < n and alpha[t] > 0.0) or (t >= n and alpha[t] < C):
                val = neg_sg[t]
                if val < m_low:
                    m_low = val
                    j = t
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
        if i < n:
            alpha[i] += d
        else:
            alpha[i] -= d
        if j < n:
            alpha[j] -= d
        else:
            alpha[j] += d
        for t in range(n):
            dk = d * (K[t, ii] - K[t, jj])
            g[t] += dk
            g[n + t] -= dk
        it += 1

    tot = 0.0
    cnt = 0
    for t in range(n2):
        if alpha[t] > 0.0 and alpha[t] < C:
            tot += neg_sg[t]
            cnt += 1
    if cnt > 0:
        b = tot / cnt
    else:
        b = 0.5 * (m_up + m_low)

    cdef cnp.ndarray[double, ndim=1] beta_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] beta = beta_arr
    for t in range(n):
        beta[t] = alpha[t] - alpha[n + t]
    return beta_arr, float(b), int(it), float(gap)


def enet_cd(double[:, ::1] X, double[::1] y, double l1, double l2,
            double tol, long long max_iter):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t p = X.shape[1]
    cdef cnp.ndarray[double, ndim=1] beta_arr = np.zeros(p, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] r_arr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] colsq_arr = np.empty(p, dtype=np.float64)
    cdef double[::1] beta = beta_arr
    cdef double[::1] r = r_arr
    cdef double[::1] col_sq = colsq_arr
    cdef Py_ssize_t i, j
    cdef long long sweep
    cdef double inv_n = 1.0 / n
    cdef double cj, denom, bj, rho, new, delta, ad, max_delta, acc

    for i in range(n):
        r[i] = y[i]
    for j in range(p):
        acc = 0.0
        for i in range(n):
            acc += X[i, j] * X[i, j]
        col_sq[j] = acc

    for sweep in range(1, max_iter + 1):
        max_delta = 0.0
        for j in range(p):
            cj = col_sq[j]
            denom = cj * inv_n + l2
            if denom <= 0.0:
                continue
            bj = beta[j]
            acc = 0.0
            for i in range(n):
                acc += X[i, j] * r[i]
            rho = acc * inv_n + cj * inv_n * bj
            if rho > l1:
                new = (rho - l1) / denom
            elif rho < -l1:
                new = (rho + l1) / denom
            else:
                new = 0.0
            delta = new - bj
            if delta != 0.0:
                for i in range(n):
                    r[i] -= X[i, j] * delta
                beta[j] = new
                ad = fabs(delta)
                if ad > max_delta:
                    max_delta = ad
        if max_delta < tol:
            return beta_arr, int(sweep), True
    return beta_arr, int(max_iter), False
