"""Hot numeric kernels with a numba fast path and a numpy fallback.

Three loops dominate the cost of optimal approximation at contour scale:
the O(n^2) squared-error table, the O(n^3) max-error table, and the
O(m_max * n^2) dynamic program.  Each has a plain-numpy implementation
(`*_numpy`) and, when numba is importable and POLYAPPROX_NO_NUMBA is not
set, a compiled twin (`*_jit`).  The module-level aliases without suffix
point at the selected path; benchmarks/bench_kernels.py times both.

Both paths evaluate the same arithmetic expressions so their outputs
agree to the last few bits; tests/test_kernels.py pins that down.
"""

from __future__ import annotations

import os

import numpy as np


def numba_disabled_by_env() -> bool:
    return os.environ.get("POLYAPPROX_NO_NUMBA", "").strip() not in ("", "0")


def _doubled_prefixes(xs, ys):
    # prefix[k] = sum over doubled index < k, so circular-arc sums are
    # plain differences for any wrap
    x2 = np.concatenate((xs, xs))
    y2 = np.concatenate((ys, ys))
    zero = np.zeros(1)
    px = np.concatenate((zero, np.cumsum(x2)))
    py = np.concatenate((zero, np.cumsum(y2)))
    pxx = np.concatenate((zero, np.cumsum(x2 * x2)))
    pyy = np.concatenate((zero, np.cumsum(y2 * y2)))
    pxy = np.concatenate((zero, np.cumsum(x2 * y2)))
    return x2, y2, px, py, pxx, pyy, pxy


def e2_cost_table_numpy(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Summed squared deviation of every forward arc u -> v.

    Entry [u, v] covers the points strictly between u and v walking
    forward; adjacent pairs cost 0.  Expansion of the squared cross
    product against the chord turns the interior sum into prefix-sum
    differences, one O(1) expression per entry.
    """
    n = xs.shape[0]
    _, _, px, py, pxx, pyy, pxy = _doubled_prefixes(xs, ys)
    out = np.zeros((n, n))
    arange = np.arange(2, n)
    for u in range(n):
        xu, yu = xs[u], ys[u]
        vs = (u + arange) % n
        dx = xs[vs] - xu
        dy = ys[vs] - yu
        l2 = dx * dx + dy * dy
        k = yu * dx - xu * dy
        a = u + 1
        b = u + arange
        sx = px[b] - px[a]
        sy = py[b] - py[a]
        sxx = pxx[b] - pxx[a]
        syy = pyy[b] - pyy[a]
        sxy = pxy[b] - pxy[a]
        cnt = arange - 1.0
        num = (
            dy * dy * sxx
            + dx * dx * syy
            - 2.0 * dx * dy * sxy
            + 2.0 * k * dy * sx
            - 2.0 * k * dx * sy
            + cnt * k * k
        )
        # cancellation can leave tiny negatives on collinear arcs
        out[u, vs] = np.maximum(num, 0.0) / l2
    return out


def emax_cost_table_numpy(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Largest deviation of every forward arc u -> v from its chord."""
    n = xs.shape[0]
    x2 = np.concatenate((xs, xs))
    y2 = np.concatenate((ys, ys))
    out = np.zeros((n, n))
    lengths = np.arange(2, n)
    offs = np.arange(1, n - 1)
    for u in range(n):
        xu, yu = xs[u], ys[u]
        vs = (u + lengths) % n
        dx = xs[vs] - xu
        dy = ys[vs] - yu
        wx = x2[u + offs] - xu
        wy = y2[u + offs] - yu
        cross = np.abs(np.outer(wx, dy) - np.outer(wy, dx))
        valid = offs[:, None] < lengths[None, :]
        cross[~valid] = -1.0
        out[u, vs] = cross.max(axis=0) / np.sqrt(dx * dx + dy * dy)
    return out


def dp_solve_numpy(rcost: np.ndarray, m_max: int, use_max: bool):
    """Optimal chain costs over a rotated cost matrix.

    rcost is (n+1, n+1) with +inf below and on the diagonal; position n
    is the start vertex again, closing the ring.  dp[j, v] is the best
    cost of reaching v from 0 with exactly j segments; parents record
    the first (smallest) predecessor attaining each optimum.
    """
    n1 = rcost.shape[0]
    dp = np.full((m_max + 1, n1), np.inf)
    parent = np.full((m_max + 1, n1), -1, dtype=np.int64)
    dp[1, 1:] = rcost[0, 1:]
    parent[1, 1:] = 0
    buf = np.empty_like(rcost)
    for j in range(2, m_max + 1):
        if use_max:
            np.maximum(dp[j - 1][:, None], rcost, out=buf)
        else:
            np.add(dp[j - 1][:, None], rcost, out=buf)
        dp[j] = buf.min(axis=0)
        parent[j] = buf.argmin(axis=0)
    return dp, parent


def _e2_cost_table_loops(xs, ys, px, py, pxx, pyy, pxy):
    n = xs.shape[0]
    out = np.zeros((n, n))
    for u in range(n):
        xu = xs[u]
        yu = ys[u]
        for length in range(2, n):
            v = (u + length) % n
            dx = xs[v] - xu
            dy = ys[v] - yu
            l2 = dx * dx + dy * dy
            k = yu * dx - xu * dy
            a = u + 1
            b = u + length
            sx = px[b] - px[a]
            sy = py[b] - py[a]
            sxx = pxx[b] - pxx[a]
            syy = pyy[b] - pyy[a]
            sxy = pxy[b] - pxy[a]
            cnt = length - 1.0
            num = (
                dy * dy * sxx
                + dx * dx * syy
                - 2.0 * dx * dy * sxy
                + 2.0 * k * dy * sx
                - 2.0 * k * dx * sy
                + cnt * k * k
            )
            if num < 0.0:
                num = 0.0
            out[u, v] = num / l2
    return out


def _emax_cost_table_loops(xs, ys):
    n = xs.shape[0]
    x2 = np.concatenate((xs, xs))
    y2 = np.concatenate((ys, ys))
    out = np.zeros((n, n))
    for u in range(n):
        xu = xs[u]
        yu = ys[u]
        for length in range(2, n):
            v = (u + length) % n
            dx = xs[v] - xu
            dy = ys[v] - yu
            best = 0.0
            for t in range(u + 1, u + length):
                c = (x2[t] - xu) * dy - (y2[t] - yu) * dx
                if c < 0.0:
                    c = -c
                if c > best:
                    best = c
            out[u, v] = best / np.sqrt(dx * dx + dy * dy)
    return out


def _dp_solve_loops(rcost, m_max, use_max):
    n1 = rcost.shape[0]
    dp = np.full((m_max + 1, n1), np.inf)
    parent = np.full((m_max + 1, n1), -1, dtype=np.int64)
    for v in range(1, n1):
        dp[1, v] = rcost[0, v]
        parent[1, v] = 0
    for j in range(2, m_max + 1):
        for v in range(j, n1):
            best = np.inf
            arg = -1
            for u in range(j - 1, v):
                prev = dp[j - 1, u]
                c = rcost[u, v]
                if use_max:
                    val = prev if prev >= c else c
                else:
                    val = prev + c
                if val < best:
                    best = val
                    arg = u
            dp[j, v] = best
            parent[j, v] = arg
    return dp, parent


HAS_NUMBA = False
e2_cost_table_jit = None
emax_cost_table_jit = None
dp_solve_jit = None

try:
    from numba import njit

    HAS_NUMBA = True

    _e2_jit_inner = njit(cache=True, nogil=True)(_e2_cost_table_loops)
    emax_cost_table_jit = njit(cache=True, nogil=True)(_emax_cost_table_loops)
    dp_solve_jit = njit(cache=True, nogil=True)(_dp_solve_loops)

    def e2_cost_table_jit(xs, ys):
        _, _, px, py, pxx, pyy, pxy = _doubled_prefixes(xs, ys)
        return _e2_jit_inner(xs, ys, px, py, pxx, pyy, pxy)

except ImportError:
    pass

USE_NUMBA = HAS_NUMBA and not numba_disabled_by_env()

if USE_NUMBA:
    e2_cost_table = e2_cost_table_jit
    emax_cost_table = emax_cost_table_jit
    dp_solve = dp_solve_jit
else:
    e2_cost_table = e2_cost_table_numpy
    emax_cost_table = emax_cost_table_numpy
    dp_solve = dp_solve_numpy
