"""Graph constructions, Laplacians and strongly-regular parameter detection.

Vertex orders are fixed so that golden Smith-form fixtures stay valid:

* ``petersen()``: outer 5-cycle 0..4, inner pentagram 5..9, numbered so the
  Laplacian is the textbook display (0~1~2~3~4~0, i~i+5, 5~7~9~6~8~5).
* ``rook(n)``: cell (i, j) is vertex ``n*i + j``.
* ``kneser(n, k)`` / ``triangular(n)``: k-subsets of ``range(n)`` in
  ``itertools.combinations`` order.
* ``shrikhande()``: element (a, b) of Z4 x Z4 is vertex ``4*a + b``.
* ``schlafli()``: a_1..a_6, b_1..b_6, then c_ij in combinations order.
* ``paley(q)``: field element with digit encoding ``x`` is vertex ``x``.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BadOrder, InvalidParameters
from .gf import GF
from .linalg import IntMatrix
from .srg import SrgParams


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph given by a symmetric 0/1 adjacency matrix."""

    n: int
    adjacency: tuple

    def __post_init__(self):
        adj = tuple(tuple(int(x) for x in row) for row in self.adjacency)
        if len(adj) != self.n or any(len(row) != self.n for row in adj):
            raise ValueError("adjacency matrix must be n x n")
        for i in range(self.n):
            if adj[i][i]:
                raise ValueError(f"loop at vertex {i}")
            for j in range(i):
                if adj[i][j] not in (0, 1):
                    raise ValueError("adjacency entries must be 0 or 1")
                if adj[i][j] != adj[j][i]:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n, edges):
        adj = [[0] * n for _ in range(n)]
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            adj[i][j] = adj[j][i] = 1
        return cls(n, adj)

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr)
        return cls(arr.shape[0], arr.tolist())

    def to_array(self):
        return np.array(self.adjacency, dtype=np.int64).reshape(self.n, self.n)

    def neighbors(self, i):
        return [j for j, x in enumerate(self.adjacency[i]) if x]

    def degrees(self):
        return [sum(row) for row in self.adjacency]

    def edges(self):
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.adjacency[i][j]]

    def is_connected(self):
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for j in self.neighbors(stack.pop()):
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n


def laplacian(G):
    """``L = D - A``."""
    deg = G.degrees()
    return IntMatrix.from_rows(
        [[deg[i] if i == j else -G.adjacency[i][j] for j in range(G.n)] for i in range(G.n)]
    )


def complement(G):
    return Graph(G.n, [[int(i != j and not G.adjacency[i][j]) for j in range(G.n)] for i in range(G.n)])


@dataclass(frozen=True)
class NotSrg:
    reason: str

    def __bool__(self):
        return False


def srg_parameters(G):
    """Return :class:`SrgParams` if ``G`` is a connected non-complete srg, else :class:`NotSrg`.

    Checks ``A^2 = kI + lambda A + mu (J - I - A)`` entrywise.
    """
    n = G.n
    if n < 3:
        return NotSrg(f"only {n} vertices")
    deg = G.degrees()
    k = deg[0]
    if any(d != k for d in deg):
        bad = next(i for i, d in enumerate(deg) if d != k)
        return NotSrg(f"not regular: vertex 0 has degree {k}, vertex {bad} has {deg[bad]}")
    if k == 0:
        return NotSrg("edgeless")
    if k == n - 1:
        return NotSrg("complete graph")
    if not G.is_connected():
        return NotSrg("not connected")
    A = G.to_array()
    A2 = A @ A
    lam = mu = None
    for i in range(n):
        for j in range(i + 1, n):
            c = int(A2[i, j])
            if A[i, j]:
                if lam is None:
                    lam = c
                elif c != lam:
                    return NotSrg(f"adjacent pair ({i}, {j}) has {c} common neighbours, expected {lam}")
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return NotSrg(f"non-adjacent pair ({i}, {j}) has {c} common neighbours, expected {mu}")
    try:
        return SrgParams(n, k, lam, mu)
    except InvalidParameters as exc:
        return NotSrg(str(exc))


def _checked(G, expected):
    got = srg_parameters(G)
    if got != SrgParams(*expected):
        raise AssertionError(f"construction produced {got}, expected srg{tuple(expected)}")
    return G


_PETERSEN_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (5, 8), (6, 8), (6, 9), (7, 9),
]


def petersen():
    return _checked(Graph.from_edges(10, _PETERSEN_EDGES), (10, 3, 0, 1))


def rook(n):
    """n x n rook's graph: cells adjacent when they share a row or column."""
    if n < 2:
        raise BadOrder(f"rook graph needs n >= 2, got {n}")
    cells = [(i, j) for i in range(n) for j in range(n)]
    edges = [(a, b) for a, b in combinations(range(n * n), 2)
             if cells[a][0] == cells[b][0] or cells[a][1] == cells[b][1]]
    return _checked(Graph.from_edges(n * n, edges), (n * n, 2 * (n - 1), n - 2, 2))


def _binom2(n):
    return n * (n - 1) // 2


def kneser(n, k):
    """k-subsets of an n-set, adjacent when disjoint.

    Only ``k = 2`` gives a strongly regular graph; that case is self-checked.
    """
    if k < 1 or n < 2 * k + 1:
        raise BadOrder(f"kneser graph needs k >= 1 and n >= 2k+1, got n={n}, k={k}")
    subsets = [frozenset(c) for c in combinations(range(n), k)]
    edges = [(a, b) for a, b in combinations(range(len(subsets)), 2)
             if not subsets[a] & subsets[b]]
    G = Graph.from_edges(len(subsets), edges)
    if k == 2:
        _checked(G, (_binom2(n), _binom2(n - 2), _binom2(n - 4), _binom2(n - 3)))
    return G


def triangular(n):
    """Line graph of K_n: 2-subsets adjacent when they meet."""
    if n < 4:
        raise BadOrder(f"triangular graph needs n >= 4, got {n}")
    subsets = [frozenset(c) for c in combinations(range(n), 2)]
    edges = [(a, b) for a, b in combinations(range(len(subsets)), 2)
             if subsets[a] & subsets[b]]
    return _checked(Graph.from_edges(len(subsets), edges), (_binom2(n), 2 * (n - 2), n - 2, 4))


def shrikhande():
    """Cayley graph of Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    gens = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for a, b in combinations(range(16), 2):
        d = ((a // 4 - b // 4) % 4, (a % 4 - b % 4) % 4)
        if d in gens:
            edges.append((a, b))
    return _checked(Graph.from_edges(16, edges), (16, 6, 2, 2))


def schlafli():
    """Complement of the intersection graph of the 27 lines on a cubic surface."""
    a = [("a", i) for i in range(1, 7)]
    b = [("b", i) for i in range(1, 7)]
    c = [("c", frozenset(s)) for s in combinations(range(1, 7), 2)]
    verts = a + b + c

    def meets(x, y):
        (tx, ix), (ty, iy) = sorted([x, y], key=lambda t: t[0])
        if tx == ty == "a" or tx == ty == "b":
            return False
        if (tx, ty) == ("a", "b"):
            return ix != iy
        if ty == "c" and tx in ("a", "b"):
            return ix in iy
        return not ix & iy

    edges = [(i, j) for i, j in combinations(range(27), 2) if meets(verts[i], verts[j])]
    lines = _checked(Graph.from_edges(27, edges), (27, 10, 1, 5))
    return _checked(complement(lines), (27, 16, 10, 8))


def paley(q):
    """Paley graph on the field with q elements (q a prime power, q = 1 mod 4)."""
    if q < 5 or q % 4 != 1:
        raise BadOrder(f"paley graph needs a prime power q = 1 mod 4, got {q}")
    F = GF(q)
    if not F.is_square(F.neg(1)):
        raise AssertionError("-1 is not a square; adjacency would be asymmetric")
    squares = {x for x in range(1, q) if F.is_square(x)}
    edges = [(x, y) for x, y in combinations(range(q), 2) if F.sub(x, y) in squares]
    return _checked(Graph.from_edges(q, edges), (q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


FAMILIES = {
    "petersen": (petersen, 0),
    "rook": (rook, 1),
    "kneser": (kneser, 2),
    "triangular": (triangular, 1),
    "shrikhande": (shrikhande, 0),
    "schlafli": (schlafli, 0),
    "paley": (paley, 1),
}


def build_family(name, *args, complemented=False):
    try:
        fn, arity = FAMILIES[name]
    except KeyError:
        raise BadOrder(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    if len(args) != arity:
        raise BadOrder(f"family {name!r} takes {arity} integer argument(s), got {len(args)}")
    G = fn(*args)
    return complement(G) if complemented else G
