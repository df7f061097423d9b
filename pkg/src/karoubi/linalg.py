"""Exact linear algebra over fields: RREF, solving, idempotent splitting.

Every routine here is deterministic. Pivots are the leftmost available
columns and null-space bases come from the free columns in increasing order,
so equal inputs always produce equal witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass

from .category import SplitWitness
from .errors import DomainMismatchError, GenerationError, PreconditionError, ShapeError
from .matrix import Matrix
from . import _kernels


def rref(M: Matrix):
    """``(R, pivots)`` with ``R`` the reduced row echelon form of ``M``."""
    M.ring.require_field("row reduction")
    rows, piv = _kernels.rref(M.ring, M.entries, M.rows, M.cols)
    return Matrix(M.ring, M.rows, M.cols, rows, _trusted=True), list(piv)


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def nullspace(M: Matrix) -> Matrix:
    """Columns form a basis of ``{x : M x = 0}``; one column per free variable."""
    R, piv = rref(M)
    ring = M.ring
    free = [j for j in range(M.cols) if j not in set(piv)]
    cols = []
    for f in free:
        v = [ring.zero] * M.cols
        v[f] = ring.one
        for i, pj in enumerate(piv):
            v[pj] = ring.neg(R[i, f])
        cols.append(v)
    if not cols:
        return Matrix(ring, M.cols, 0)
    return Matrix(ring, len(cols), M.cols, cols).T


def solve(A: Matrix, B: Matrix):
    """Some ``X`` with ``A X = B`` (free variables set to zero), or ``None``."""
    if A.rows != B.rows:
        raise ShapeError(f"solve: {A.shape} against right-hand side {B.shape}")
    ring = A.ring
    ring.require_field("linear solving")
    n, p = A.cols, B.cols
    aug = A.hstack(B)
    R, piv = rref(aug)
    if any(j >= n for j in piv):
        return None
    X = [[ring.zero] * p for _ in range(n)]
    for i, pj in enumerate(piv):
        for k in range(p):
            X[pj][k] = R[i, n + k]
    if n == 0:
        return Matrix(ring, 0, p)
    return Matrix(ring, n, p, X)


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise ShapeError("only square matrices are invertible")
    X = solve(M, Matrix.identity(M.ring, M.rows))
    if X is None:
        raise PreconditionError("matrix is singular")
    return X


def is_invertible(M: Matrix) -> bool:
    return M.is_square() and rank(M) == M.rows


def rank_factorize_idempotent(ring, e: Matrix) -> SplitWitness:
    """Split an idempotent matrix as ``e = s r`` with ``r s = id``.

    ``s`` collects the pivot columns of ``e`` and ``r`` is the nonzero part of
    its RREF, so ``r`` gives coordinates in that column basis.
    """
    ring.require_field("idempotent splitting")
    if e.ring != ring:
        raise PreconditionError(f"matrix over {e.ring}, expected {ring}")
    if not e.is_square():
        raise DomainMismatchError("idempotent must be square")
    if e @ e != e:
        raise PreconditionError("matrix is not idempotent")
    R, piv = rref(e)
    k = len(piv)
    s = e.submatrix(range(e.rows), piv)
    r = R.submatrix(range(k), range(e.cols))
    return SplitWitness(r=r, s=s)


def cokernel_of_section(ring, a: Matrix, r: Matrix) -> Matrix:
    """A cokernel ``b`` of the section ``a`` compatible with its retraction ``r``.

    The complement of ``im a`` is ``ker r`` with its RREF basis; ``b`` gives
    coordinates of ``(id - a r) x`` in that basis, so ``[r; b]`` inverts
    ``[a | ker r]``.
    """
    ring.require_field("cokernels")
    if r.shape != (a.cols, a.rows):
        raise ShapeError(f"retraction shape {r.shape} does not match section {a.shape}")
    if r @ a != Matrix.identity(ring, a.cols):
        raise PreconditionError("r a != id: not a retraction of a")
    R, piv = rref(r)
    free = [j for j in range(a.rows) if j not in set(piv)]
    proj = Matrix.identity(ring, a.rows) - a @ r
    return proj.submatrix(free, range(a.rows))


def kernel_of_retraction(ring, g: Matrix, s: Matrix) -> Matrix:
    """A kernel of the retraction ``g`` with section ``s`` (dual of the above)."""
    return cokernel_of_section(ring, g.T, s.T).T


# ------------------------------------------------------ linear hom systems


@dataclass(frozen=True)
class Term:
    """``left . X . right`` for the unknown named ``unknown``; ``None`` means identity."""

    unknown: str
    left: Matrix | None = None
    right: Matrix | None = None


def solve_hom_system(ring, unknowns: dict, equations: list):
    """Solve homogeneous equations ``sum_i L_i X_i R_i = 0`` in matrix unknowns.

    ``unknowns`` maps names to shapes ``(rows, cols)``; each equation is a list
    of :class:`Term`. Returns ``(dimension, basis)`` where each basis element
    maps every unknown name to a matrix.
    """
    ring.require_field("hom-space computation")
    names = list(unknowns)
    offset, total = {}, 0
    for name in names:
        rr, cc = unknowns[name]
        if rr < 0 or cc < 0:
            raise ShapeError(f"unknown {name} has a negative dimension")
        offset[name] = total
        total += rr * cc
    coeff_rows = []
    for eq in equations:
        shape, rows = None, {}
        for t in eq:
            if t.unknown not in unknowns:
                raise ShapeError(f"equation mentions undeclared unknown {t.unknown!r}")
            ur, uc = unknowns[t.unknown]
            L = t.left if t.left is not None else Matrix.identity(ring, ur)
            Rm = t.right if t.right is not None else Matrix.identity(ring, uc)
            if L.cols != ur or Rm.rows != uc:
                raise ShapeError(f"term on {t.unknown} has inconsistent shapes")
            term_shape = (L.rows, Rm.cols)
            if shape is None:
                shape = term_shape
            elif shape != term_shape:
                raise ShapeError(f"terms of one equation disagree on shape: {shape} vs {term_shape}")
            # coefficient of X[k][l] in entry (i, j) is L[i][k] * R[l][j]
            base = offset[t.unknown]
            for i in range(L.rows):
                for j in range(Rm.cols):
                    row = rows.setdefault((i, j), {})
                    for k in range(ur):
                        lik = L[i, k]
                        if lik == ring.zero:
                            continue
                        for l in range(uc):
                            c = ring.mul(lik, Rm[l, j])
                            if c != ring.zero:
                                idx = base + k * uc + l
                                row[idx] = ring.add(row.get(idx, ring.zero), c)
        for key in sorted(rows):
            coeff_rows.append([rows[key].get(v, ring.zero) for v in range(total)])
    if coeff_rows:
        N = nullspace(Matrix(ring, len(coeff_rows), total, coeff_rows))
    else:
        N = Matrix.identity(ring, total)
    basis = []
    for col in range(N.cols):
        elem = {}
        for name in names:
            rr, cc = unknowns[name]
            o = offset[name]
            data = [[N[o + k * cc + l, col] for l in range(cc)] for k in range(rr)]
            elem[name] = Matrix(ring, rr, cc, data if rr else None)
        basis.append(elem)
    return N.cols, basis


def combine_basis(ring, basis, coeffs, unknowns):
    """Linear combination of a solution basis; an empty basis gives zeros."""
    out = {name: Matrix(ring, *shape) for name, shape in unknowns.items()}
    for elem, lam in zip(basis, coeffs):
        for name in out:
            out[name] = out[name] + elem[name].scale(lam)
    return out


# --------------------------------------------------------- random matrices


def random_invertible(ring, n: int, rng, tries: int = 200) -> Matrix:
    """A uniformly random invertible ``n x n`` matrix, by rejection."""
    for _ in range(tries):
        M = Matrix.random(ring, n, n, rng)
        if rank(M) == n:
            return M
    raise GenerationError(f"no invertible {n}x{n} matrix over {ring} after {tries} draws")


def random_idempotent(ring, n: int, rng, k: int | None = None) -> Matrix:
    """``P diag(1,..,1,0,..,0) P^-1`` with ``k`` ones (random if ``None``)."""
    if k is None:
        k = rng.randint(0, n)
    if not 0 <= k <= n:
        raise PreconditionError(f"rank {k} outside 0..{n}")
    P = random_invertible(ring, n, rng)
    D = Matrix.diag(ring, [ring.one] * k + [ring.zero] * (n - k))
    return P @ D @ inverse(P)
