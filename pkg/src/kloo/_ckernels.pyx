# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Signatures mirror kloo._pykernels exactly."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32


cdef inline i64 _ceil_div(i64 num, i64 den) noexcept nogil:
    # den > 0
    if num >= 0:
        return (num + den - 1) // den
    return -((-num) // den)


cdef inline i64 _floor_div(i64 num, i64 den) noexcept nogil:
    if num >= 0:
        return num // den
    return -((-num + den - 1) // den)


cdef i64 _walk(const i64[:] a, const i64[:] d, i64[:] v, int n, i64[:, :] out, bint fill) noexcept nogil:
    # Depth-first walk over the basis set; each coordinate ranges over an
    # interval cut out by the pair conditions against earlier coordinates.
    cdef i64 lo[64]
    cdef i64 hi[64]
    cdef i64 count = 0
    cdef int j = 0, i
    cdef i64 l, h
    while True:
        # compute bounds for coordinate j
        l = -d[j] + 1
        h = a[j]
        for i in range(j):
            l = max(l, _ceil_div(d[j] * (v[i] - a[i]), d[i]))
            h = min(h, _floor_div(d[j] * v[i] + d[i] * a[j] - 1, d[i]))
        lo[j] = l
        hi[j] = h
        v[j] = l
        # descend or backtrack
        while True:
            if v[j] <= hi[j]:
                if j == n - 1:
                    if fill:
                        for i in range(n):
                            out[count, i] = v[i]
                    count += 1
                    v[j] += 1
                    continue
                j += 1
                break
            if j == 0:
                return count
            j -= 1
            v[j] += 1


def basis_points(tuple a, tuple d):
    cdef int n = len(a)
    if n > 64:
        raise ValueError("at most 64 variables supported")
    cdef i64[:] av = np.asarray(a, dtype=np.int64)
    cdef i64[:] dv = np.asarray(d, dtype=np.int64)
    cdef i64[:] v = np.zeros(n, dtype=np.int64)
    cdef i64[:, :] dummy = np.zeros((1, n), dtype=np.int64)
    cdef i64 m
    with nogil:
        m = _walk(av, dv, v, n, dummy, False)
    result = np.empty((m, n), dtype=np.int64)
    cdef i64[:, :] out = result
    with nogil:
        _walk(av, dv, v, n, out, True)
    return result


def trace_power_table(int p, modulus, g, basis_traces, i64 size):
    """table[e] = Tr(g^e) for 0 <= e < size, by repeated multiplication by g."""
    cdef int k = len(modulus) - 1
    cdef i64[:] mod = np.asarray(modulus, dtype=np.int64)
    cdef i64[:] gv = np.asarray(g, dtype=np.int64)
    cdef i64[:] tr = np.asarray(basis_traces, dtype=np.int64)
    cdef i64[:] cur = np.zeros(k, dtype=np.int64)
    cdef i64[:] prod = np.zeros(2 * k, dtype=np.int64)
    result = np.empty(size, dtype=np.int32)
    cdef i32[:] table = result
    cdef i64 e, acc, c
    cdef int i, j
    cur[0] = 1
    with nogil:
        for e in range(size):
            acc = 0
            for i in range(k):
                acc += cur[i] * tr[i]
            table[e] = <i32>(acc % p)
            for i in range(2 * k):
                prod[i] = 0
            for i in range(k):
                if cur[i] == 0:
                    continue
                for j in range(k):
                    prod[i + j] += cur[i] * gv[j]
            # reduce by the monic modulus from the top down
            for i in range(2 * k - 2, k - 1, -1):
                c = prod[i] % p
                if c != 0:
                    for j in range(k):
                        prod[i - k + j] -= c * mod[j]
                prod[i] = 0
            for i in range(k):
                c = prod[i] % p
                if c < 0:
                    c += p
                cur[i] = c
    return result


def count_traces(const i32[:] table, int p, tuple a, tuple d, int lam, i64 start, i64 stop):
    """Histogram of Tr(sum x_i^a_i + lam prod x_i^-d_i) over a slab of the torus.

    x_i = g^e_i; the first exponent runs over [start, stop), the others over
    [0, N).  Returns counts[c] = number of points with trace c.
    """
    cdef i64 N = table.shape[0]
    cdef int n = len(a)
    cdef int i
    cdef i64 e
    counts_arr = np.zeros(p, dtype=np.int64)
    cdef i64[:] counts = counts_arr
    if n > 64:
        raise ValueError("at most 64 variables supported")
    ta_arr = np.empty((n, N), dtype=np.int32)
    cdef i32[:, :] ta = ta_arr
    gam_arr = np.empty(N, dtype=np.int32)
    cdef i32[:] gam = gam_arr
    cdef i64[:] dm = np.asarray([x % N for x in d], dtype=np.int64)
    cdef i64[:] am = np.asarray([x % N for x in a], dtype=np.int64)
    cdef i64 lp = lam % p
    for i in range(n):
        for e in range(N):
            ta[i, e] = table[(am[i] * e) % N]
    for e in range(N):
        gam[e] = <i32>((lp * table[(N - e) % N]) % p)

    cdef i64 ex[64]
    cdef i64 base, s, t, se, dl
    cdef int last = n - 1
    cdef int pos
    if start >= stop:
        return counts_arr
    if n == 1:
        with nogil:
            for e in range(start, stop):
                t = ta[0, e] + gam[(dm[0] * e) % N]
                counts[t % p] += 1
        return counts_arr
    with nogil:
        for i in range(last):
            ex[i] = 0
        ex[0] = start
        dl = dm[last]
        while True:
            base = 0
            s = 0
            for i in range(last):
                base += ta[i, ex[i]]
                s = (s + dm[i] * ex[i]) % N
            base = base % p
            se = s
            for e in range(N):
                t = base + ta[last, e] + gam[se]
                counts[t % p] += 1
                se += dl
                if se >= N:
                    se -= N
            # odometer over the outer exponents
            pos = last - 1
            while pos >= 0:
                ex[pos] += 1
                if pos == 0:
                    if ex[0] < stop:
                        break
                    pos = -1
                    break
                if ex[pos] < N:
                    break
                ex[pos] = 0
                pos -= 1
            if pos < 0:
                break
    return counts_arr
