"""Dense exact-arithmetic kernels with a compiled prime-field fast path.

The compiled module ``_fastfp`` is used for prime fields when it was built
and ``KAROUBI_PURE`` is unset; everything else runs the pure-Python code in
``_pure``. ``BACKEND`` names the selection made at import time.
"""
import os

from . import _pure
from ..rings import PrimeField, Rationals

# products of two residues must fit in a C long
_FAST_PRIME_LIMIT = 2**31

try:
    if os.environ.get("KAROUBI_PURE"):
        raise ImportError("pure backend forced")
    from . import _fastfp
except ImportError:
    _fastfp = None

BACKEND = "compiled" if _fastfp is not None else "pure"


def _fast(ring):
    return _fastfp is not None and isinstance(ring, PrimeField) and ring.p < _FAST_PRIME_LIMIT


def matmul(ring, a, b, m, k, n):
    """Product of an ``m x k`` and a ``k x n`` entry table over ``ring``."""
    if isinstance(ring, PrimeField):
        impl = _fastfp.matmul_mod if _fast(ring) else _pure.matmul_mod
        return impl(a, b, m, k, n, ring.p)
    if isinstance(ring, Rationals):
        return _pure.matmul_rational(a, b, m, k, n)
    return _pure.matmul_generic(ring, a, b, m, k, n)


def rref(ring, a, m, n):
    """Reduced row echelon form with leftmost pivots; returns ``(rows, pivots)``."""
    if isinstance(ring, PrimeField):
        impl = _fastfp.rref_mod if _fast(ring) else _pure.rref_mod
        return impl(a, m, n, ring.p)
    return _pure.rref_generic(ring, a, m, n)
