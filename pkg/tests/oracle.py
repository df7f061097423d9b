"""Independent reference computations for freezing test values.

Nothing here imports the package: products are schoolbook loops, ranks and
row reductions come from sympy, and small hom spaces are enumerated by brute
force over the whole finite field.
"""
from fractions import Fraction
from itertools import product

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix


def _dom(p):
    return QQ if p is None else GF(p)


def _norm(x, p):
    if p is None:
        return Fraction(int(x.numerator), int(x.denominator))
    return int(x) % p


def mul(a, b, p=None):
    """Schoolbook product of nested lists (``p=None`` means exact rationals)."""
    n = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        r = []
        for j in range(cols):
            s = sum(Fraction(row[k]) * Fraction(b[k][j]) for k in range(n))
            r.append(s if p is None else int(s) % p)
        out.append(r)
    return out


def rank(rows, p=None):
    if not rows or not rows[0]:
        return 0
    return DomainMatrix.from_list(rows, _dom(p)).rank()


def rref(rows, p=None):
    M = DomainMatrix.from_list(rows, _dom(p))
    R, pivots = M.rref()
    return [[_norm(x, p) for x in row] for row in R.to_list()], tuple(pivots)


def inverse(rows, p=None):
    M = DomainMatrix.from_list(rows, _dom(p))
    return [[_norm(x, p) for x in row] for row in M.inv().to_list()]


def all_matrices(p, m, n):
    for flat in product(range(p), repeat=m * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(m)]


def brute_ext_hom_dim(p, alpha, beta, A, C, B, D):
    """``log_p`` of the number of pairs ``(a, c)`` with ``a alpha = beta c``.

    ``alpha: C -> A`` and ``beta: D -> B`` as nested lists of shape ``A x C``
    and ``B x D``; ``a`` is ``B x A`` and ``c`` is ``D x C``.
    """
    count = 0
    for a in all_matrices(p, B, A):
        left = mul(a, alpha, p) if A and C else [[0] * C for _ in range(B)]
        for c in all_matrices(p, D, C):
            right = mul(beta, c, p) if D else [[0] * C for _ in range(B)]
            if left == right:
                count += 1
    k = 0
    while p ** k < count:
        k += 1
    assert p ** k == count
    return k


def brute_rect_hom_dim(p, X, Y, m, n, pp, qq):
    """Pairs ``(A, B)`` with ``A: q x n``, ``B: p x m`` and ``B X = Y A``."""
    count = 0
    for A in all_matrices(p, qq, n):
        YA = mul(Y, A, p) if qq else [[0] * n for _ in range(pp)]
        for B in all_matrices(p, pp, m):
            BX = mul(B, X, p) if m else [[0] * n for _ in range(pp)]
            if BX == YA:
                count += 1
    k = 0
    while p ** k < count:
        k += 1
    assert p ** k == count
    return k
