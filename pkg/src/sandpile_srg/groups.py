"""Finite abelian groups and the critical group of a graph Laplacian.

A group is stored by its elementary divisors: for each prime ``p`` a tuple
``(m_1, m_2, ...)`` where ``m_i`` is the multiplicity of ``Z/p^i``. Two groups
are isomorphic exactly when these tuples agree, so dataclass equality is
group isomorphism.

Text form (ascending prime, then ascending exponent)::

    (Z/2)^4 + (Z/5)^3          elementary divisors
    Z/2 + (Z/10)^3             invariant factors
    0                          trivial group

JSON form: ``{"2": [4], "5": [0, 3]}`` maps each prime (as a string key) to
its multiplicity list.
"""

import re
from dataclasses import dataclass
from math import prod

from sympy import factorint

from ._arith import require_prime
from .errors import Disconnected, NotLaplacian, ParseError
from .linalg import IntMatrix, det, local_elementary_divisors, snf


@dataclass(frozen=True)
class AbelianGroup:
    divisors: tuple = ()

    def __post_init__(self):
        items = self.divisors.items() if isinstance(self.divisors, dict) else self.divisors
        norm = []
        for p, mults in items:
            require_prime(int(p))
            mults = [int(m) for m in mults]
            if any(m < 0 for m in mults):
                raise ValueError("negative multiplicity")
            while mults and mults[-1] == 0:
                mults.pop()
            if mults:
                norm.append((int(p), tuple(mults)))
        norm.sort()
        if len({p for p, _ in norm}) != len(norm):
            raise ValueError("prime listed twice")
        object.__setattr__(self, "divisors", tuple(norm))

    # construction

    @classmethod
    def trivial(cls):
        return cls()

    @classmethod
    def from_prime_powers(cls, p, counts):
        """Sylow-type group ``sum (Z/p^i)^counts[i]`` from an ``{i: count}`` map."""
        counts = {i: c for i, c in counts.items() if c}
        if any(i < 1 for i in counts):
            raise ValueError("exponents must be positive")
        top = max(counts, default=0)
        return cls({p: [counts.get(i, 0) for i in range(1, top + 1)]})

    @classmethod
    def from_invariant_factors(cls, factors):
        acc = {}
        for d in factors:
            d = int(d)
            if d <= 0:
                raise ValueError(f"invariant factor must be positive, got {d}")
            for p, e in factorint(d).items():
                mults = acc.setdefault(p, [])
                if len(mults) < e:
                    mults.extend([0] * (e - len(mults)))
                mults[e - 1] += 1
        return cls(acc)

    # structure

    def as_dict(self):
        return dict(self.divisors)

    @property
    def primes(self):
        return tuple(p for p, _ in self.divisors)

    def multiplicities(self, p):
        return dict(self.divisors).get(p, ())

    def order(self):
        return prod(p ** sum(i * m for i, m in enumerate(ms, 1)) for p, ms in self.divisors)

    def exponent(self):
        return prod(p ** len(ms) for p, ms in self.divisors)

    def rank(self):
        """Minimal number of generators."""
        return max((sum(ms) for _, ms in self.divisors), default=0)

    def sylow(self, p):
        require_prime(p)
        ms = self.multiplicities(p)
        return AbelianGroup({p: ms}) if ms else AbelianGroup()

    def is_trivial(self):
        return not self.divisors

    def invariant_factors(self):
        """Chain ``d_1 | d_2 | ... | d_n`` with every ``d_i > 1``."""
        n = self.rank()
        factors = [1] * n
        for p, ms in self.divisors:
            powers = [p ** i for i, m in enumerate(ms, 1) for _ in range(m)]
            # largest powers go with the largest factors
            for slot, q in zip(range(n - 1, -1, -1), reversed(powers)):
                factors[slot] *= q
        return factors

    def __add__(self, other):
        acc = {p: list(ms) for p, ms in self.divisors}
        for p, ms in other.divisors:
            mine = acc.setdefault(p, [])
            mine.extend([0] * (len(ms) - len(mine)))
            for i, m in enumerate(ms):
                mine[i] += m
        return AbelianGroup(acc)

    # serialisation

    def to_text(self):
        terms = []
        for p, ms in self.divisors:
            for i, m in enumerate(ms, 1):
                if m:
                    terms.append(_term(p ** i, m))
        return " + ".join(terms) if terms else "0"

    def to_invariant_text(self):
        factors = self.invariant_factors()
        if not factors:
            return "0"
        terms = []
        i = 0
        while i < len(factors):
            j = i
            while j < len(factors) and factors[j] == factors[i]:
                j += 1
            terms.append(_term(factors[i], j - i))
            i = j
        return " + ".join(terms)

    def __str__(self):
        return self.to_text()

    def to_json(self):
        return {str(p): list(ms) for p, ms in self.divisors}

    @classmethod
    def from_json(cls, data):
        return cls({int(p): ms for p, ms in data.items()})

    @classmethod
    def parse(cls, text):
        """Inverse of :meth:`to_text` / :meth:`to_invariant_text`."""
        text = text.strip()
        if text in ("0", "1", ""):
            return cls()
        factors = []
        for pos, raw in enumerate(text.split("+"), 1):
            m = _TERM.fullmatch(raw.strip())
            if not m:
                raise ParseError(f"bad group term {raw.strip()!r}", pos=pos)
            n = int(m.group(1) or m.group(3))
            count = int(m.group(2) or 1)
            factors.extend([n] * count)
        return cls.from_invariant_factors([n for n in factors if n != 1])


_TERM = re.compile(r"\(Z/(\d+)\)\^(\d+)|Z/(\d+)")


def _term(n, m):
    return f"Z/{n}" if m == 1 else f"(Z/{n})^{m}"


def sylow(G, p):
    return G.sylow(p)


def invariant_factors(G):
    return G.invariant_factors()


def from_invariant_factors(factors):
    return AbelianGroup.from_invariant_factors(factors)


def order(G):
    return G.order()


def exponent(G):
    return G.exponent()


# Laplacians

def _check_laplacian(L):
    if L.rows != L.cols:
        raise NotLaplacian(f"Laplacian must be square, got {L.shape}")
    if not L.is_symmetric():
        raise NotLaplacian("Laplacian must be symmetric")
    for i in range(L.rows):
        row = L.row(i)
        if sum(row):
            raise NotLaplacian(f"row {i} does not sum to zero")
        if any(x > 0 for j, x in enumerate(row) if j != i):
            raise NotLaplacian(f"row {i} has a positive off-diagonal entry")


def laplacian_components(L):
    """Connected components of the graph underlying a Laplacian."""
    n = L.rows
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        seen[start] = True
        stack = [start]
        while stack:
            i = stack.pop()
            for j, x in enumerate(L.row(i)):
                if x and not seen[j]:
                    seen[j] = True
                    stack.append(j)
    return count


def critical_group(L):
    """Torsion part of ``coker L`` from the global Smith normal form."""
    _check_laplacian(L)
    factors = snf(L).invariant_factors
    zeros = sum(1 for s in factors if s == 0)
    if zeros != 1:
        raise Disconnected(f"Laplacian has {zeros} zero invariant factors")
    return AbelianGroup.from_invariant_factors([s for s in factors if s > 1])


def laplacian_local_divisors(L, p, cap=None):
    """Prime-local divisors of a connected Laplacian (rank ``n - 1`` is known)."""
    _check_laplacian(L)
    if laplacian_components(L) != 1:
        raise Disconnected("graph is not connected")
    return local_elementary_divisors(L, p, cap=cap, rank=L.rows - 1)


def critical_group_at_primes(L, caps):
    """Sylow subgroups of the critical group at the primes keyed in ``caps``.

    ``caps`` maps each prime to the largest p-valuation an invariant factor may
    have (None lets the cap escalate). The returned group is the direct sum of
    those Sylow subgroups, plus the per-prime divisor tallies.
    """
    group = AbelianGroup()
    local = {}
    for p, cap in sorted(caps.items()):
        e = laplacian_local_divisors(L, p, cap)
        local[p] = e
        group = group + AbelianGroup({p: e.sylow_multiplicities()})
    return group, local


def spanning_tree_count(L):
    """Matrix-tree theorem: determinant of ``L`` with the first row and column removed."""
    n = L.rows
    if n <= 1:
        return 1
    return det(IntMatrix.from_rows([list(L.row(i))[1:] for i in range(1, n)]))
