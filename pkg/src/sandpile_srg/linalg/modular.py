"""Ranks, kernels and elementary divisors at a single prime."""

from dataclasses import dataclass
from math import isqrt

from sympy import prevprime

from .._arith import require_prime
from ..errors import CapExceeded
from . import _backend
from .matrix import IntMatrix

GENERIC_CAP = 64


@dataclass(frozen=True)
class PrimeLocalDivisors:
    """Multiplicities of ``p^i`` among the nonzero invariant factors.

    ``e[i]`` counts invariant factors divisible by ``p^i`` but not ``p^(i+1)``;
    ``free_rank`` counts zero invariant factors, so ``free_rank + sum(e)`` is
    ``min(rows, cols)``.
    """

    p: int
    e: tuple
    free_rank: int

    @property
    def p_rank(self):
        return self.e[0] if self.e else 0

    def sylow_multiplicities(self):
        """``(m_1, m_2, ...)`` with trailing zeros dropped."""
        m = list(self.e[1:])
        while m and m[-1] == 0:
            m.pop()
        return tuple(m)


def rank_mod_p(M, p):
    """Rank of ``M`` over the field with ``p`` elements."""
    require_prime(p)
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = _backend.rref_mod(M.to_lists(), p)
    return len(pivots)


def kernel_basis_mod_p(M, p):
    """Basis of ``{x : M x = 0 (mod p)}`` as tuples with entries in ``[0, p)``."""
    require_prime(p)
    n = M.cols
    if M.rows == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    R, pivots = _backend.rref_mod(M.to_lists(), p)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [0] * n
        vec[free] = 1
        for row, c in enumerate(pivots):
            vec[c] = int(-R[row, free]) % p
        basis.append(tuple(vec))
    return basis


def _hadamard_bound(M):
    # bounds every minor of M
    bound = 1
    for i in range(M.rows):
        sq = sum(x * x for x in M.row(i))
        if sq:
            bound *= isqrt(sq) + 1
    return bound


def rational_rank(M):
    """Exact rank of ``M`` over the rationals.

    Ranks modulo primes just below 2**31 never exceed the rational rank; once
    the product of the primes used exceeds the Hadamard bound, every minor of
    order one above the largest observed rank is divisible by that product
    and hence zero, which certifies the result.
    """
    k = min(M.rows, M.cols)
    if k == 0:
        return 0
    lists = M.to_lists()
    bound = _hadamard_bound(M)
    best = 0
    modulus = 1
    q = 2**31
    while modulus <= bound:
        q = prevprime(q)
        _, pivots = _backend.rref_mod(lists, q)
        best = max(best, len(pivots))
        if best == k:
            return k
        modulus *= q
    return best


def local_elementary_divisors(M, p, cap=None, rank=None):
    """p-elementary divisor multiplicities ``e_0 .. e_cap`` of ``M``.

    Diagonalises ``M`` over ``Z/p^(cap+1)``, never touching entries larger than
    that modulus. ``rank`` (the rank over Q) may be supplied when known, as
    for Laplacians; otherwise it is computed by :func:`rational_rank`.

    With ``cap=None`` the cap starts small and is raised until all nonzero
    invariant factors are accounted for (at most ``GENERIC_CAP``), and the
    returned list is trimmed after its last nonzero entry.
    """
    require_prime(p)
    k = min(M.rows, M.cols)
    if rank is None:
        rank = rational_rank(M)
    zeros = k - rank
    if cap is not None:
        e = _local(M, p, cap, zeros)
        if e is None:
            raise CapExceeded(p, cap)
        return PrimeLocalDivisors(p, e, zeros)
    cap = 0
    while p ** (cap + 2) < _backend.kernels.INT64_MODULUS_LIMIT:
        cap += 1
    while True:
        e = _local(M, p, cap, zeros)
        if e is not None:
            e = list(e)
            while len(e) > 1 and e[-1] == 0:
                e.pop()
            return PrimeLocalDivisors(p, tuple(e), zeros)
        if cap >= GENERIC_CAP:
            raise CapExceeded(p, cap)
        cap = min(2 * cap + 1, GENERIC_CAP)


def _local(M, p, cap, zeros):
    k = min(M.rows, M.cols)
    if k == 0:
        return (0,) * (cap + 1)
    vals = _backend.local_pivot_valuations(M.to_lists(), p, p ** (cap + 1))
    if k - len(vals) > zeros:
        return None
    if k - len(vals) < zeros:
        raise ArithmeticError("more nonzero invariant factors than the rank allows")
    e = [0] * (cap + 1)
    for t in vals:
        e[t] += 1
    return tuple(e)


def multiplicities_from_factors(factors, p, cap=None):
    """Same tally as :func:`local_elementary_divisors`, from known invariant factors."""
    nonzero = [s for s in factors if s]
    vals = []
    for s in nonzero:
        t = 0
        while s % p == 0:
            s //= p
            t += 1
        vals.append(t)
    top = max(vals, default=0) if cap is None else cap
    if cap is not None and any(t > cap for t in vals):
        raise CapExceeded(p, cap)
    e = [0] * (top + 1)
    for t in vals:
        e[t] += 1
    return PrimeLocalDivisors(p, tuple(e), len(factors) - len(nonzero))


