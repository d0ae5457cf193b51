"""Arithmetic in the field with q = p^m elements, just enough for Paley graphs.

Elements are integers ``0 .. q-1`` read as base-p digit vectors, i.e. the
polynomial ``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` is ``sum c_i p^i``. The field
is ``F_p[x] / (h)`` where ``h`` is the first monic irreducible of degree ``m``
when the non-leading coefficients are enumerated in this same integer order.
"""

from itertools import product

from sympy import factorint

from .errors import BadOrder


def _digits(a, p, m):
    out = []
    for _ in range(m):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds, p):
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _polymod(a, h, p):
    # a, h: coefficient lists, lowest degree first; h monic
    a = list(a)
    dh = len(h) - 1
    for top in range(len(a) - 1, dh - 1, -1):
        c = a[top] % p
        if c:
            for i in range(dh + 1):
                a[top - dh + i] = (a[top - dh + i] - c * h[i]) % p
    return [x % p for x in a[:dh]] + [0] * max(0, dh - len(a))


def _has_factor(h, p):
    m = len(h) - 1
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_polymod(h, list(low) + [1], p)):
                return True
    return False


def lowest_irreducible(p, m):
    """First monic irreducible of degree ``m`` over F_p, lowest coefficient first."""
    if m == 1:
        return [0, 1]
    for code in range(p ** m):
        h = _digits(code, p, m) + [1]
        if h[0] and not _has_factor(h, p):
            return h
    raise AssertionError("no irreducible polynomial found")


class GF:
    def __init__(self, q):
        f = factorint(q)
        if q < 2 or len(f) != 1:
            raise BadOrder(f"{q} is not a prime power")
        (self.p, self.m), = f.items()
        self.q = q
        self.modulus = lowest_irreducible(self.p, self.m)

    def add(self, a, b):
        p, m = self.p, self.m
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, m), _digits(b, p, m))], p)

    def neg(self, a):
        p, m = self.p, self.m
        return _undigits([(-x) % p for x in _digits(a, p, m)], p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p, m = self.p, self.m
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod_ = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod_[i + j] += x * y
        return _undigits(_polymod(prod_, self.modulus, p), p)

    def pow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_square(self, a):
        """Nonzero squares are the solutions of ``a^((q-1)/2) = 1`` (q odd)."""
        return a != 0 and self.pow(a, (self.q - 1) // 2) == 1
