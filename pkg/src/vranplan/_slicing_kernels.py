"""Hot loops for the log-utility power allocation with the Shannon rate model.

``R(p) = w * log2(1 + g p)``. The derivative of ``log R`` does not depend on
``w``:  ``d/dp log R = g / ((1 + g p) * ln(1 + g p))``, strictly decreasing in
``p``. Kernels with the ``_nb`` suffix are numba-compiled loops; ``_np`` ones
are vectorised numpy with the same results.
"""
import math

import numpy as np

from ._accel import JIT_ENABLED, njit

BISECT_ITERS = 100


# -- stationarity solve: find p with dlogR(p) = lam inside [lo, hi] -----------

@njit
def stationary_power_nb(lam, g, lo, hi):
    n = g.shape[0]
    out = np.empty(n, np.float64)
    for u in range(n):
        gu = g[u]
        a = lo
        b = hi
        x = gu * b
        if gu / ((1.0 + x) * math.log1p(x)) >= lam:
            out[u] = b
            continue
        x = gu * a
        if gu / ((1.0 + x) * math.log1p(x)) <= lam:
            out[u] = a
            continue
        for _ in range(BISECT_ITERS):
            m = 0.5 * (a + b)
            if m <= a or m >= b:
                break
            x = gu * m
            if gu / ((1.0 + x) * math.log1p(x)) > lam:
                a = m
            else:
                b = m
        out[u] = 0.5 * (a + b)
    return out


def shannon_dlog_np(p, g):
    x = g * p
    return g / ((1.0 + x) * np.log1p(x))


def bisect_np(dlog, lam, lo, hi, n):
    """Vectorised bisection of a decreasing derivative ``dlog(p) = lam`` on ``[lo, hi]``."""
    a = np.full(n, lo, np.float64)
    b = np.full(n, hi, np.float64)
    at_hi = dlog(b) >= lam
    at_lo = dlog(a) <= lam
    for _ in range(BISECT_ITERS):
        m = 0.5 * (a + b)
        up = dlog(m) > lam
        a = np.where(up, m, a)
        b = np.where(up, b, m)
    out = 0.5 * (a + b)
    out = np.where(at_lo, lo, out)
    return np.where(at_hi, hi, out)


def stationary_power_np(lam, g, lo, hi):
    return bisect_np(lambda p: shannon_dlog_np(p, g), lam, lo, hi, g.shape[0])


# -- grid oracle on the budget face sum(p) = p_max ----------------------------

@njit
def grid_search_nb(g, w, p_max, res):
    n = g.shape[0]
    best = np.full(n, p_max / n)
    best_val = -np.inf
    evals = 0
    k = int(math.floor(p_max / res))
    if n == 1:
        best[0] = p_max
        return best, math.log(w[0] * math.log2(1.0 + g[0] * p_max)), 1
    if n == 2:
        for i in range(1, k + 1):
            p1 = i * res
            p2 = p_max - p1
            if p2 <= 0.0:
                break
            v = math.log(w[0] * math.log2(1.0 + g[0] * p1)) + math.log(w[1] * math.log2(1.0 + g[1] * p2))
            evals += 1
            if v > best_val:
                best_val = v
                best[0] = p1
                best[1] = p2
        return best, best_val, evals
    lr2 = np.empty(k + 1)
    for j in range(1, k + 1):
        lr2[j] = math.log(w[1] * math.log2(1.0 + g[1] * (j * res)))
    for i in range(1, k + 1):
        p1 = i * res
        if p_max - p1 <= 0.0:
            break
        v1 = math.log(w[0] * math.log2(1.0 + g[0] * p1))
        for j in range(1, k + 1):
            p2 = j * res
            p3 = p_max - p1 - p2
            if p3 <= 0.0:
                break
            v = v1 + lr2[j] + math.log(w[2] * math.log2(1.0 + g[2] * p3))
            evals += 1
            if v > best_val:
                best_val = v
                best[0] = p1
                best[1] = p2
                best[2] = p3
    return best, best_val, evals


def grid_search_np(g, w, p_max, res, log_rate=None):
    """Same as :func:`grid_search_nb`; ``log_rate(u, p)`` overrides the Shannon model."""
    # points next to a simplex corner can round to zero rate; log(0) = -inf just loses
    with np.errstate(divide="ignore"):
        return _grid_search_np(g, w, p_max, res, log_rate)


def _grid_search_np(g, w, p_max, res, log_rate):
    n = g.shape[0]
    if log_rate is None:
        def log_rate(u, p):
            return np.log(w[u] * np.log2(1.0 + g[u] * p))
    k = int(math.floor(p_max / res))
    steps = np.arange(1, k + 1, dtype=np.float64) * res
    if n == 1:
        p = np.array([p_max])
        return p, float(log_rate(0, p)[0]), 1
    if n == 2:
        p1 = steps[p_max - steps > 0.0]
        v = log_rate(0, p1) + log_rate(1, p_max - p1)
        i = int(np.argmax(v))
        return np.array([p1[i], p_max - p1[i]]), float(v[i]), int(v.size)
    best = np.full(n, p_max / n)
    best_val = -np.inf
    evals = 0
    steps = steps[p_max - steps > 0.0]
    lr1 = log_rate(0, steps)
    for i, p1 in enumerate(steps):
        p2 = steps[p_max - p1 - steps > 0.0]
        if p2.size == 0:
            break
        v = lr1[i] + log_rate(1, p2) + log_rate(2, p_max - p1 - p2)
        j = int(np.argmax(v))
        evals += v.size
        if v[j] > best_val:
            best_val = float(v[j])
            best = np.array([p1, p2[j], p_max - p1 - p2[j]])
    return best, best_val, evals


if JIT_ENABLED:
    stationary_power = stationary_power_nb
    grid_search = grid_search_nb
else:
    stationary_power = stationary_power_np
    grid_search = grid_search_np
