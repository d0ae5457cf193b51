"""Exact integer linear algebra: Smith normal form and prime-local elimination."""

from ._backend import BACKEND, available_backends
from .matrix import IntMatrix
from .modular import (
    PrimeLocalDivisors,
    kernel_basis_mod_p,
    local_elementary_divisors,
    multiplicities_from_factors,
    rank_mod_p,
    rational_rank,
)
from .snf import MINOR_GCD_MAX_DIM, SmithNormalForm, det, minor_gcd, snf

__all__ = [
    "BACKEND",
    "IntMatrix",
    "MINOR_GCD_MAX_DIM",
    "PrimeLocalDivisors",
    "SmithNormalForm",
    "available_backends",
    "det",
    "kernel_basis_mod_p",
    "local_elementary_divisors",
    "minor_gcd",
    "multiplicities_from_factors",
    "rank_mod_p",
    "rational_rank",
    "snf",
]
