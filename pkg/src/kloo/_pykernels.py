"""Reference implementations of the compiled kernels (numpy, no build step)."""
from __future__ import annotations

import numpy as np


def _extend(prefix, lo, hi):
    counts = np.maximum(hi - lo + 1, 0)
    total = int(counts.sum())
    rows = np.repeat(np.arange(prefix.shape[0]), counts)
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    last = np.arange(total, dtype=np.int64) - starts + lo[rows]
    return np.column_stack([prefix[rows], last])


def basis_points(a: tuple, d: tuple) -> np.ndarray:
    """Rows of the basis set in lexicographic order.

    Coordinate j is confined by each earlier i to the interval
    d_j (v_i - a_i) <= d_i v_j < d_j v_i + d_i a_j, so the set grows one
    coordinate at a time by interval extension.
    """
    pts = np.arange(-d[0] + 1, a[0] + 1, dtype=np.int64).reshape(-1, 1)
    for j in range(1, len(a)):
        lo = np.full(pts.shape[0], -d[j] + 1, dtype=np.int64)
        hi = np.full(pts.shape[0], a[j], dtype=np.int64)
        for i in range(j):
            vi = pts[:, i]
            lo = np.maximum(lo, -((-(d[j] * (vi - a[i]))) // d[i]))
            hi = np.minimum(hi, (d[j] * vi + d[i] * a[j] - 1) // d[i])
        pts = _extend(pts, lo, hi)
    return pts


def trace_power_table(p: int, modulus, g, basis_traces, size: int) -> np.ndarray:
    k = len(modulus) - 1
    mod = [int(c) for c in modulus]
    gv = [int(c) for c in g]
    tr = [int(c) for c in basis_traces]
    cur = [1] + [0] * (k - 1)
    table = np.empty(size, dtype=np.int32)
    for e in range(size):
        table[e] = sum(c * t for c, t in zip(cur, tr)) % p
        prod = [0] * (2 * k)
        for i, ci in enumerate(cur):
            if ci:
                for j, gj in enumerate(gv):
                    prod[i + j] += ci * gj
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * mod[j]
        cur = [c % p for c in prod[:k]]
    return table


def count_traces(table, p: int, a: tuple, d: tuple, lam: int, start: int, stop: int) -> np.ndarray:
    table = np.asarray(table, dtype=np.int64)
    N = table.shape[0]
    n = len(a)
    counts = np.zeros(p, dtype=np.int64)
    if start >= stop:
        return counts
    e = np.arange(N, dtype=np.int64)
    ta = [table[(ai * e) % N] for ai in a]
    gam = (lam * table[(-e) % N]) % p
    dl = d[-1] % N
    last_shift = (dl * e) % N

    def outer(i, base, s):
        if i == n - 1:
            t = base + ta[-1] + gam[(s + last_shift) % N]
            counts[:] += np.bincount(t % p, minlength=p)
            return
        rng = range(start, stop) if i == 0 else range(N)
        for ei in rng:
            outer(i + 1, base + int(ta[i][ei]), (s + d[i] * ei) % N)

    if n == 1:
        sl = slice(start, stop)
        t = ta[0][sl] + gam[(d[0] * e[sl]) % N]
        return np.bincount(t % p, minlength=p).astype(np.int64)
    outer(0, 0, 0)
    return counts
