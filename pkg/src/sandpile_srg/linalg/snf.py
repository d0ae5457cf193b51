"""Smith normal form over the integers, with optional unimodular transforms."""

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .._arith import ext_gcd
from ..errors import OrderTooLarge
from .matrix import IntMatrix

# guard for the brute-force determinantal-divisor oracle
MINOR_GCD_MAX_DIM = 12


@dataclass(frozen=True)
class SmithNormalForm:
    """Invariant factors ``s_1 | s_2 | ... | s_n`` (zeros last), n = min(rows, cols).

    When transforms were requested, ``U @ M @ V`` equals :meth:`diagonal`.
    """

    invariant_factors: tuple
    rows: int
    cols: int
    U: IntMatrix | None = None
    V: IntMatrix | None = None

    def diagonal(self):
        return IntMatrix.diag(self.invariant_factors, self.rows, self.cols)

    @property
    def rank(self):
        return sum(1 for s in self.invariant_factors if s)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(M, want_transforms=False):
    """Smith normal form of an arbitrary integer matrix.

    Elimination picks the smallest nonzero entry (in absolute value) of the
    remaining block as pivot to keep entries small. The diagonal produced is
    then put into divisibility order by pairwise gcd/lcm steps.
    """
    m, n = M.rows, M.cols
    A = M.to_lists()
    U = _identity(m) if want_transforms else None
    V = _identity(n) if want_transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in A:
            row[dst] += c * row[src]
        if V is not None:
            for row in V:
                row[dst] += c * row[src]

    k = min(m, n)
    for t in range(k):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // piv))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // piv))
            # leftover remainders are smaller than the pivot; promote the smallest
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if not cand:
                break
            _, i, j = min(cand)
            if i != t:
                swap_rows(i, t)
            else:
                swap_cols(j, t)

    d = [A[i][i] for i in range(k)]
    for i in range(k):
        if d[i] < 0:
            d[i] = -d[i]
            if U is not None:
                U[i] = [-x for x in U[i]]

    for i in range(k):
        for j in range(i + 1, k):
            a, b = d[i], d[j]
            if b == 0 or (a and b % a == 0):
                continue
            if a == 0:
                d[i], d[j] = b, 0
                if U is not None:
                    swap_rows(i, j)
                    swap_cols(i, j)
                continue
            g, x, y = ext_gcd(a, b)
            if U is not None:
                for row in V:
                    row[i] += row[j]
                ui, uj = U[i], U[j]
                U[i] = [x * p + y * q for p, q in zip(ui, uj)]
                U[j] = [-(b // g) * p + (a // g) * q for p, q in zip(ui, uj)]
                c = y * b // g
                for row in V:
                    row[j] -= c * row[i]
            d[i], d[j] = g, a * b // g

    return SmithNormalForm(
        tuple(d),
        m,
        n,
        IntMatrix.from_rows(U) if U is not None else None,
        IntMatrix.from_rows(V) if V is not None else None,
    )


def det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_lists()
    sign = 1
    prev = 1
    for t in range(n - 1):
        if A[t][t] == 0:
            for i in range(t + 1, n):
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    sign = -sign
                    break
            else:
                return 0
        piv = A[t][t]
        for i in range(t + 1, n):
            ai = A[i]
            at = A[t]
            f = ai[t]
            for j in range(t + 1, n):
                ai[j] = (ai[j] * piv - f * at[j]) // prev
            ai[t] = 0
        prev = piv
    return sign * A[n - 1][n - 1]


def minor_gcd(M, k, max_dim=MINOR_GCD_MAX_DIM):
    """gcd of all k x k minors of ``M`` (0 if they all vanish).

    Brute force over every choice of rows and columns, intended as an
    independent oracle for small matrices only.
    """
    if max(M.rows, M.cols) > max_dim:
        raise OrderTooLarge(f"matrix {M.shape} exceeds max_dim={max_dim}")
    if not 0 <= k <= min(M.rows, M.cols):
        raise OrderTooLarge(f"no {k}x{k} minors in a {M.rows}x{M.cols} matrix")
    g = 0
    for rs in combinations(range(M.rows), k):
        for cs in combinations(range(M.cols), k):
            sub = IntMatrix.from_rows([[M[i, j] for j in cs] for i in rs]) if k else IntMatrix(0, 0, ())
            g = gcd(g, det(sub))
            if g == 1:
                return 1
    return g
