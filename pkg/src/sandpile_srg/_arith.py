"""Small exact integer helpers shared across modules."""

import sys

from sympy import factorint, isprime

from .errors import NotPrime


def require_prime(p):
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def valuation(n, p):
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def prime_divisors(n):
    """Sorted primes dividing the nonzero integer ``n``."""
    return sorted(factorint(abs(n)))


def ext_gcd(a, b):
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``x*a + y*b = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def decimal(n):
    """``str(n)`` without the interpreter's digit limit (orders can be huge)."""
    limit = getattr(sys, "get_int_max_str_digits", None)
    if limit is None:
        return str(n)
    old = limit()
    sys.set_int_max_str_digits(0)
    try:
        return str(n)
    finally:
        sys.set_int_max_str_digits(old)
