"""Pick the elimination kernel implementation at import time.

The compiled Cython module is used when it was built; otherwise the numpy
version. Setting ``SANDPILE_SRG_PURE=1`` forces the numpy version.
"""

import os

from . import _pykernels

try:
    if os.environ.get("SANDPILE_SRG_PURE", "") not in ("", "0"):
        raise ImportError("pure backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

kernels = _ckernels if _ckernels is not None else _pykernels
BACKEND = kernels.NAME


def available_backends():
    return {m.NAME: m for m in (_ckernels, _pykernels) if m is not None}


def rref_mod(a, q):
    if q >= kernels.INT64_MODULUS_LIMIT:
        return _pykernels.rref_mod(a, q)
    return kernels.rref_mod(a, q)


def local_pivot_valuations(a, p, modulus):
    if modulus >= kernels.INT64_MODULUS_LIMIT:
        return _pykernels.local_pivot_valuations(a, p, modulus)
    return kernels.local_pivot_valuations(a, p, modulus)
