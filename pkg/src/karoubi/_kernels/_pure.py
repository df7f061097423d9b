"""Pure-Python reference kernels. Matrices are tuples of row tuples."""
from fractions import Fraction
from math import lcm


def matmul_mod(a, b, m, k, n, p):
    if m == 0:
        return ()
    if n == 0:
        return ((),) * m
    if k == 0:
        return ((0,) * n,) * m
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a
    )


def rref_mod(a, m, n, p):
    rows = [list(r) for r in a]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [x * inv % p for x in rows[r]]
        rows[r] = pr
        for i in range(m):
            f = rows[i][c]
            if i != r and f:
                ri = rows[i]
                rows[i] = [(x - f * y) % p for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def matmul_generic(ring, a, b, m, k, n):
    if m == 0:
        return ()
    if n == 0:
        return ((),) * m
    z = ring.zero
    if k == 0:
        return ((z,) * n,) * m
    cols = tuple(zip(*b))
    return tuple(
        tuple(ring.coerce(sum((x * y for x, y in zip(row, col)), z)) for col in cols)
        for row in a
    )


def matmul_rational(a, b, m, k, n):
    """Rational product through one integer product with common denominators."""
    if m == 0 or n == 0 or k == 0:
        return matmul_generic(_Q, a, b, m, k, n)
    da = lcm(*(x.denominator for row in a for x in row))
    db = lcm(*(x.denominator for row in b for x in row))
    ia = [[x.numerator * (da // x.denominator) for x in row] for row in a]
    cols = [[x.numerator * (db // x.denominator) for x in col] for col in zip(*b)]
    d = da * db
    out = []
    for row in ia:
        vals = [sum(x * y for x, y in zip(row, col)) for col in cols]
        out.append(tuple(_frac(v, d) for v in vals))
    return tuple(out)


_SMALL = {i: Fraction(i) for i in range(-64, 65)}


def _frac(v, d):
    if v % d == 0:
        v //= d
        f = _SMALL.get(v)
        return f if f is not None else Fraction(v)
    return Fraction(v, d)


def rref_generic(ring, a, m, n):
    ring.require_field("row reduction")
    rows = [list(r) for r in a]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][c])
        pr = [ring.mul(x, inv) for x in rows[r]]
        rows[r] = pr
        for i in range(m):
            f = rows[i][c]
            if i != r and f != 0:
                rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


class _Q:
    zero = Fraction(0)

    @staticmethod
    def coerce(x):
        return Fraction(x)
