# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; see ``_pykernels`` for the contract."""

import numpy as np

from libc.stdint cimport uint8_t, uint32_t, uint64_t

cdef enum:
    MAX_DEGREE = 10


cdef inline bint _next_permutation(int* a, int n) nogil:
    cdef int i = n - 2, j, t
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return True


def gf2_rank(rows, int ncols):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols <= 0:
        for r in rows:
            if r:
                raise ValueError("row wider than ncols")
        return 0
    cdef int nw = (ncols + 63) // 64
    mat = np.zeros((nrows, nw), dtype=np.uint64)
    cdef uint64_t[:, ::1] M = mat
    cdef object low = (1 << 64) - 1
    cdef Py_ssize_t i, k
    cdef int w
    for i, r in enumerate(rows):
        if r >> ncols:
            raise ValueError("row wider than ncols")
        for w in range(nw):
            M[i, w] = (r >> (64 * w)) & low

    cdef Py_ssize_t rank = 0, piv
    cdef int col, b
    cdef uint64_t bit, t
    with nogil:
        for col in range(ncols - 1, -1, -1):
            w = col // 64
            b = col % 64
            bit = (<uint64_t>1) << b
            piv = -1
            for i in range(rank, nrows):
                if M[i, w] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(w + 1):
                    t = M[piv, k]
                    M[piv, k] = M[rank, k]
                    M[rank, k] = t
            for i in range(rank + 1, nrows):
                if M[i, w] & bit:
                    for k in range(w + 1):
                        M[i, k] ^= M[rank, k]
            rank += 1
            if rank == nrows:
                break
    return rank


def stabilizer_scan(masks, int degree):
    if degree < 1 or degree > MAX_DEGREE:
        raise ValueError("degree out of range")
    words = sorted(set(masks))
    cdef int nwords = len(words)
    member = np.zeros(1 << degree, dtype=np.uint8)
    cdef uint8_t[::1] mem = member
    for wv in words:
        if wv < 0 or wv >> degree:
            raise ValueError("mask wider than degree")
        mem[wv] = 1

    supp_arr = np.zeros(max(1, nwords * degree), dtype=np.int32)
    cnt_arr = np.zeros(max(1, nwords), dtype=np.int32)
    cdef int[::1] supp = supp_arr
    cdef int[::1] cnt = cnt_arr
    cdef int wi, c, n
    for wi, wv in enumerate(words):
        n = 0
        for c in range(degree):
            if (wv >> (degree - 1 - c)) & 1:
                supp[wi * degree + n] = c
                n += 1
        cnt[wi] = n

    cdef int perm[MAX_DEGREE]
    cdef uint32_t bits[MAX_DEGREE]
    cdef uint32_t img
    cdef bint ok
    for c in range(degree):
        perm[c] = c
    out = []
    while True:
        for c in range(degree):
            bits[c] = (<uint32_t>1) << (degree - 1 - perm[c])
        ok = True
        for wi in range(nwords):
            img = 0
            for n in range(cnt[wi]):
                img |= bits[supp[wi * degree + n]]
            if not mem[img]:
                ok = False
                break
        if ok:
            out.append(tuple([perm[c] for c in range(degree)]))
        if not _next_permutation(perm, degree):
            break
    return out


def factorization_images(bytes key):
    if len(key) != 28:
        raise ValueError("factorization key must be 28 bytes")
    cdef int pa[28]
    cdef int pb[28]
    cdef int i, j, c, n
    cdef int wv
    for i in range(28):
        wv = key[i]
        n = 0
        for c in range(8):
            if (wv >> (7 - c)) & 1:
                if n == 0:
                    pa[i] = c
                elif n == 1:
                    pb[i] = c
                n += 1
        if n != 2:
            raise ValueError(f"word {wv:02X} is not of weight 2")

    cdef int perm[8]
    cdef uint8_t bits[8]
    cdef uint8_t mapped[28]
    cdef uint32_t cls[7]
    cdef uint32_t packed
    cdef uint8_t tmp
    cdef uint8_t buf[28]
    for c in range(8):
        perm[c] = c
    out = set()
    while True:
        for c in range(8):
            bits[c] = <uint8_t>(1 << (7 - perm[c]))
        for i in range(28):
            mapped[i] = bits[pa[i]] | bits[pb[i]]
        for i in range(7):
            # insertion sort, descending, four words
            for j in range(4 * i + 1, 4 * i + 4):
                tmp = mapped[j]
                n = j - 1
                while n >= 4 * i and mapped[n] < tmp:
                    mapped[n + 1] = mapped[n]
                    n -= 1
                mapped[n + 1] = tmp
            cls[i] = ((<uint32_t>mapped[4 * i]) << 24) | ((<uint32_t>mapped[4 * i + 1]) << 16) \
                | ((<uint32_t>mapped[4 * i + 2]) << 8) | (<uint32_t>mapped[4 * i + 3])
        for i in range(1, 7):
            packed = cls[i]
            n = i - 1
            while n >= 0 and cls[n] > packed:
                cls[n + 1] = cls[n]
                n -= 1
            cls[n + 1] = packed
        for i in range(7):
            buf[4 * i] = (cls[i] >> 24) & 0xFF
            buf[4 * i + 1] = (cls[i] >> 16) & 0xFF
            buf[4 * i + 2] = (cls[i] >> 8) & 0xFF
            buf[4 * i + 3] = cls[i] & 0xFF
        out.add(bytes(buf[:28]))
        if not _next_permutation(perm, 8):
            break
    return out


def latin_orthogonal_batch(squares, long long x):
    arr = np.ascontiguousarray(squares, dtype=np.uint8)
    if arr.ndim != 3 or arr.shape[1] != 8 or arr.shape[2] != 8:
        raise ValueError("expected an (N, 8, 8) array")
    if arr.size and arr.max() > 7:
        raise ValueError("symbol out of range")
    cdef uint8_t[:, :, ::1] sq = arr
    cdef Py_ssize_t N = arr.shape[0], s
    cdef uint8_t xr[8]
    cdef uint8_t xc[8]
    cdef uint8_t xs[8]
    cdef int i, j
    for i in range(8):
        xr[i] = (x >> (23 - i)) & 1
        xc[i] = (x >> (15 - i)) & 1
        xs[i] = (x >> (7 - i)) & 1
    res = np.ones(N, dtype=bool)
    cdef uint8_t[::1] out = res.view(np.uint8)
    cdef uint8_t sym
    with nogil:
        for s in range(N):
            for i in range(8):
                for j in range(8):
                    sym = sq[s, i, j]
                    if xr[i] ^ xc[j] ^ xs[sym]:
                        out[s] = 0
                        break
                if not out[s]:
                    break
    return res
