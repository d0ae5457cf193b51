# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels; see ``_pykernels`` for the contract.

Only moduli below 2**31 are accepted here so every product fits in int64.
"""

import numpy as np
cimport numpy as cnp

from libc.stdint cimport int64_t

cnp.import_array()

NAME = "cython"
INT64_MODULUS_LIMIT = 2**31


cdef inline int64_t _inv(int64_t a, int64_t q):
    # a is a unit mod q
    cdef int64_t t = 0, new_t = 1, r = q, new_r = a, quo, tmp
    while new_r != 0:
        quo = r // new_r
        tmp = t - quo * new_t
        t = new_t
        new_t = tmp
        tmp = r - quo * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += q
    return t


def _prepare(a, q):
    if q >= INT64_MODULUS_LIMIT:
        raise OverflowError("modulus too large for the compiled kernel")
    arr = np.array(a, dtype=object) % q
    return np.ascontiguousarray(arr.astype(np.int64))


def rref_mod(a, q):
    cdef cnp.ndarray[int64_t, ndim=2] arr = _prepare(a, q)
    cdef int64_t[:, ::1] A = arr
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t qq = q, inv, factor, x
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                x = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = x
        inv = _inv(A[r, c], qq)
        for j in range(c, n):
            A[r, j] = A[r, j] * inv % qq
        for i in range(m):
            if i == r:
                continue
            factor = A[i, c]
            if factor == 0:
                continue
            for j in range(c, n):
                if A[r, j] != 0:
                    A[i, j] = (A[i, j] - factor * A[r, j]) % qq
                    if A[i, j] < 0:
                        A[i, j] += qq
        pivots.append(c)
        r += 1
    return arr, pivots


def local_pivot_valuations(a, p, modulus):
    cdef cnp.ndarray[int64_t, ndim=2] arr = _prepare(a, modulus)
    cdef int64_t[:, ::1] A = arr
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t t = 0, i, j, pi, pj, k = min(m, n)
    cdef int64_t pp = p, q = modulus, inv, factor, x
    cdef int shift = 0
    cdef bint found, anynz
    out = []
    while t < k and q > 1:
        found = False
        anynz = False
        pi = pj = -1
        for i in range(t, m):
            for j in range(t, n):
                x = A[i, j]
                if x != 0:
                    anynz = True
                    if x % pp != 0:
                        pi = i
                        pj = j
                        found = True
                        break
            if found:
                break
        if not found:
            if not anynz:
                break
            q = q // pp
            for i in range(t, m):
                for j in range(t, n):
                    A[i, j] = (A[i, j] // pp) % q
            shift += 1
            continue
        if pi != t:
            for j in range(n):
                x = A[t, j]
                A[t, j] = A[pi, j]
                A[pi, j] = x
        if pj != t:
            for i in range(m):
                x = A[i, t]
                A[i, t] = A[i, pj]
                A[i, pj] = x
        inv = _inv(A[t, t], q)
        for i in range(t + 1, m):
            factor = A[i, t] * inv % q
            if factor == 0:
                continue
            for j in range(t, n):
                if A[t, j] != 0:
                    A[i, j] = (A[i, j] - factor * A[t, j]) % q
                    if A[i, j] < 0:
                        A[i, j] += q
        out.append(shift)
        t += 1
    return out
