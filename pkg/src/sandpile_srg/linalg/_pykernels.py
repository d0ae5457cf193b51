"""Pure numpy implementations of the elimination kernels.

Same contract as the compiled ``_ckernels`` module. Moduli below 2**31 run on
int64 arrays (products stay below 2**62); larger moduli fall back to object
arrays of Python ints.
"""

import numpy as np

NAME = "python"
INT64_MODULUS_LIMIT = 2**31


def _as_array(a, q):
    dtype = np.int64 if q < INT64_MODULUS_LIMIT else object
    arr = np.array(a, dtype=object) % q
    return arr.astype(dtype) if dtype is np.int64 else arr


def rref_mod(a, q):
    """Reduced row echelon form of ``a`` over the field Z/q (q prime).

    Returns ``(R, pivots)`` where ``R`` is a numpy array with entries in
    ``[0, q)`` and ``pivots`` lists the pivot columns in order.
    """
    A = _as_array(a, q)
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, q)
        A[r] = A[r] * inv % q
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r]) % q) % q
        pivots.append(c)
        r += 1
    return A, pivots


def local_pivot_valuations(a, p, modulus):
    """p-adic valuations of the pivots met while diagonalising ``a`` mod ``modulus``.

    ``modulus`` must be a power of ``p``. Each returned valuation ``t`` is the
    p-valuation of one invariant factor (``t < log_p(modulus)``); invariant
    factors that vanish modulo ``modulus`` are not reported.
    """
    A = _as_array(a, modulus)
    m, n = A.shape
    q = modulus
    shift = 0
    out = []
    t = 0
    while t < min(m, n) and q > 1:
        block = A[t:, t:]
        units = np.argwhere(block % p != 0)
        if units.size == 0:
            if not block.any():
                break
            # every entry is divisible by p: factor it out of the block
            A[t:, t:] = block // p
            q //= p
            A[t:, t:] %= q
            shift += 1
            continue
        i, j = (int(x) for x in units[0])
        i += t
        j += t
        if i != t:
            A[[t, i]] = A[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
        inv = pow(int(A[t, t]), -1, q)
        col = A[t + 1:, t] * inv % q
        hit = np.flatnonzero(col)
        if hit.size:
            rows = hit + t + 1
            A[rows, t:] = (A[rows, t:] - np.outer(col[hit], A[t, t:]) % q) % q
        out.append(shift)
        t += 1
    return out
