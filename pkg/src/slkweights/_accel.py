"""Hot integer kernels with an optional numba backend.

Set ``SLKWEIGHTS_NUMBA=0`` to force the pure-Python implementations (useful
for debugging and for the benchmark that compares both backends).  Every
kernel works on int64 numpy arrays and returns a Python-compatible integer.
"""
from __future__ import annotations

import os

import numpy as np


def _env_enabled() -> bool:
    return os.environ.get("SLKWEIGHTS_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


try:  # pragma: no cover - depends on the environment
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _env_enabled()


def count_points_box_py(A, b, lo, hi):
    """Count integer x with ``lo <= x <= hi`` and ``A x <= b``.

    Depth-first over coordinates; at each level the feasible interval of the
    current coordinate is tightened using the worst case of the remaining
    box, and the last coordinate is counted in closed form.
    """
    m, n = A.shape
    if n == 0:
        for i in range(m):
            if b[i] < 0:
                return 0
        return 1
    # minrest[i, j] = min over the box of sum_{t >= j} A[i, t] x_t
    minrest = np.zeros((m, n + 1), dtype=np.int64)
    for i in range(m):
        acc = 0
        for j in range(n - 1, -1, -1):
            a = A[i, j]
            if a > 0:
                acc += a * lo[j]
            else:
                acc += a * hi[j]
            minrest[i, j] = acc
    partial = np.zeros((n + 1, m), dtype=np.int64)
    cur = np.zeros(n, dtype=np.int64)
    top = np.zeros(n, dtype=np.int64)
    total = 0
    depth = 0
    fresh = True
    while depth >= 0:
        if fresh:
            # compute the feasible interval of coordinate `depth`
            l = lo[depth]
            h = hi[depth]
            for i in range(m):
                a = A[i, depth]
                slack = b[i] - partial[depth, i] - minrest[i, depth + 1]
                if a > 0:
                    v = slack // a
                    if v < h:
                        h = v
                elif a < 0:
                    v = -((-slack) // a)
                    if v > l:
                        l = v
                elif slack < 0:
                    h = l - 1
            if l > h:
                depth -= 1
                fresh = False
                continue
            if depth == n - 1:
                total += h - l + 1
                depth -= 1
                fresh = False
                continue
            cur[depth] = l
            top[depth] = h
        else:
            cur[depth] += 1
            if cur[depth] > top[depth]:
                depth -= 1
                continue
        x = cur[depth]
        for i in range(m):
            partial[depth + 1, i] = partial[depth, i] + A[i, depth] * x
        depth += 1
        fresh = True
    return total


def count_gt_py(lam, beta):
    """Number of Gelfand-Tsetlin patterns with top row ``lam`` and weight ``beta``.

    Both arguments are integer gl vectors of the same length; ``lam`` must be
    weakly decreasing.  Rows ``k-1 .. 3`` are enumerated with sum-aware
    interval pruning; row 2 is counted in closed form.
    """
    k = lam.shape[0]
    total_l = 0
    total_b = 0
    for i in range(k):
        total_l += lam[i]
        total_b += beta[i]
    if total_l != total_b:
        return 0
    if k == 1:
        return 1
    if k == 2:
        if lam[0] >= beta[0] and beta[0] >= lam[1]:
            return 1
        return 0
    prefix = np.zeros(k + 1, dtype=np.int64)
    for i in range(k):
        prefix[i + 1] = prefix[i] + beta[i]
    # rows[m, :m] holds row m of the pattern, rows[k] is lam
    rows = np.zeros((k + 1, k), dtype=np.int64)
    for i in range(k):
        rows[k, i] = lam[i]
    s2 = prefix[2]
    b1 = beta[0]
    if k == 3:
        lo = max(rows[3, 1], s2 - rows[3, 1], b1, s2 - b1)
        hi = min(rows[3, 0], s2 - rows[3, 2])
        return hi - lo + 1 if hi >= lo else 0
    # variables: rows k-1 down to 3, entries 0..m-1
    nvar = 0
    for m in range(3, k):
        nvar += m
    vm = np.zeros(nvar, dtype=np.int64)
    vj = np.zeros(nvar, dtype=np.int64)
    t = 0
    for m in range(k - 1, 2, -1):
        for j in range(m):
            vm[t] = m
            vj[t] = j
            t += 1
    top = np.zeros(nvar, dtype=np.int64)
    total = 0
    depth = 0
    fresh = True
    while depth >= 0:
        m = vm[depth]
        j = vj[depth]
        if fresh:
            up = rows[m + 1, j]
            low = rows[m + 1, j + 1]
            sofar = 0
            for i in range(j):
                sofar += rows[m, i]
            minrest = 0
            maxrest = 0
            for i in range(j + 1, m):
                minrest += rows[m + 1, i + 1]
                maxrest += rows[m + 1, i]
            need = prefix[m] - sofar
            l = max(low, need - maxrest)
            h = min(up, need - minrest)
            if l > h:
                depth -= 1
                fresh = False
                continue
            rows[m, j] = l
            top[depth] = h
        else:
            rows[m, j] += 1
            if rows[m, j] > top[depth]:
                depth -= 1
                continue
        if depth == nvar - 1:
            # row 2 = (x, s2 - x) interlaces row 3 above and (b1) below
            lo = max(rows[3, 1], s2 - rows[3, 1], b1, s2 - b1)
            hi = min(rows[3, 0], s2 - rows[3, 2])
            if hi >= lo:
                total += hi - lo + 1
            fresh = False
            continue
        depth += 1
        fresh = True
    return total


if USE_NUMBA:  # pragma: no cover - exercised when numba is present
    count_points_box_nb = numba.njit(cache=True)(count_points_box_py)
    count_gt_nb = numba.njit(cache=True)(count_gt_py)
else:
    count_points_box_nb = None
    count_gt_nb = None


def backend() -> str:
    return "numba" if USE_NUMBA else "python"


def _as_i64(x):
    return np.ascontiguousarray(np.asarray(x, dtype=np.int64))


def _pick(fast, slow, use_numba):
    want = USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    return fast if want and fast is not None else slow


def count_points_box(A, b, lo, hi, use_numba: bool | None = None) -> int:
    A = _as_i64(A)
    if A.ndim != 2:
        A = A.reshape(len(b), -1)
    fn = _pick(count_points_box_nb, count_points_box_py, use_numba)
    return int(fn(A, _as_i64(b), _as_i64(lo), _as_i64(hi)))


def count_gt(lam, beta, use_numba: bool | None = None) -> int:
    fn = _pick(count_gt_nb, count_gt_py, use_numba)
    return int(fn(_as_i64(lam), _as_i64(beta)))
