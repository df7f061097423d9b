from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from karoubi import generators as G
from karoubi.category import verify_split_witness
from karoubi.errors import DomainMismatchError, PreconditionError, ShapeError, UnsupportedRingError
from karoubi.linalg import (
    Term,
    cokernel_of_section,
    inverse,
    kernel_of_retraction,
    nullspace,
    random_idempotent,
    random_invertible,
    rank,
    rank_factorize_idempotent,
    rref,
    solve,
    solve_hom_system,
)
from karoubi.matrix import MatCategory, Matrix
from karoubi.rect import RectCategory, RectMorphism, RectObject, rect_compose, rect_direct_sum
from karoubi.rings import Integers, fp, q, ring_from_tag
from strategies import rings, rng_from, seeds

F2, F3, F5, Q = fp(2), fp(3), fp(5), q()


def M(ring, rows):
    return Matrix.from_rows(ring, rows)


def _p(ring):
    return getattr(ring, "p", None)


# ------------------------------------------------------------------ rings


def test_prime_check():
    with pytest.raises(PreconditionError):
        fp(4)
    assert fp(7).p == 7


def test_ring_tags_roundtrip():
    for tag in ("q", "fp2", "fp5", "z"):
        assert ring_from_tag(tag) == ring_from_tag(tag)
    with pytest.raises(PreconditionError):
        ring_from_tag("r")


def test_field_inverse_mod_p():
    assert F5.mul(F5.inv(3), 3) == 1
    with pytest.raises(ZeroDivisionError):
        Q.inv(0)


# ----------------------------------------------------------------- matrix


def test_empty_product_is_zero_of_composed_shape():
    a, b = Matrix.zeros(Q, 3, 0), Matrix.zeros(Q, 0, 2)
    prod = a @ b
    assert prod.shape == (3, 2) and prod.is_zero()


def test_json_schema_and_roundtrip():
    m = M(Q, [[Fraction(1, 2), 0], [3, -1]])
    d = m.to_json()
    assert d == {"ring": "q", "rows": 2, "cols": 2, "entries": [["1/2", "0"], ["3", "-1"]]}
    assert Matrix.from_json(d) == m
    e = Matrix.zeros(F5, 0, 3).to_json()
    assert e == {"ring": "fp", "p": 5, "rows": 0, "cols": 3}
    assert Matrix.from_json(e) == Matrix.zeros(F5, 0, 3)


def test_bare_list_requires_ring():
    with pytest.raises(PreconditionError):
        Matrix.from_json([[1]])
    assert Matrix.from_json([[3]], F2) == M(F2, [[1]])


def test_shape_mismatch():
    with pytest.raises(DomainMismatchError):
        M(F2, [[1, 0]]) @ M(F2, [[1, 0]])


@given(rings, seeds)
def test_matmul_matches_schoolbook(ring, seed):
    rng = rng_from(seed)
    m, k, n = (G.dim(rng, 5, lo=1) for _ in range(3))
    a, b = G.matrix(ring, m, k, rng), G.matrix(ring, k, n, rng)
    assert (a @ b).tolist() == oracle.mul(a.tolist(), b.tolist(), _p(ring))


# ----------------------------------------------------------------- linalg


@given(rings, seeds)
def test_rref_rank_and_inverse_match_sympy(ring, seed):
    rng = rng_from(seed)
    m, n = G.dim(rng, 5, lo=1), G.dim(rng, 5, lo=1)
    a = G.matrix(ring, m, n, rng)
    R, piv = rref(a)
    ref, ref_piv = oracle.rref(a.tolist(), _p(ring))
    assert R.tolist() == ref and tuple(piv) == ref_piv
    assert rank(a) == oracle.rank(a.tolist(), _p(ring))
    P = random_invertible(ring, n, rng)
    assert inverse(P).tolist() == oracle.inverse(P.tolist(), _p(ring))


@given(rings, seeds)
def test_nullspace_and_solve(ring, seed):
    rng = rng_from(seed)
    m, n = G.dim(rng, 4, lo=1), G.dim(rng, 4, lo=1)
    a = G.matrix(ring, m, n, rng)
    N = nullspace(a)
    assert N.shape == (n, n - rank(a))
    assert (a @ N).is_zero()
    x = G.matrix(ring, n, 2, rng)
    y = a @ x
    sol = solve(a, y)
    assert sol is not None and a @ sol == y


def test_solve_inconsistent():
    assert solve(M(F2, [[1], [1]]), M(F2, [[1], [0]])) is None


def test_rank_factorization_examples():
    w = rank_factorize_idempotent(F2, Matrix.identity(F2, 3))
    assert w.r == w.s == Matrix.identity(F2, 3)
    e = M(F2, [[1, 1], [0, 0]])
    w = rank_factorize_idempotent(F2, e)
    assert w.r == M(F2, [[1, 1]]) and w.s == M(F2, [[1], [0]])
    assert w.s @ w.r == e and w.r @ w.s == Matrix.identity(F2, 1)
    z = Matrix.zeros(Q, 3, 3)
    w = rank_factorize_idempotent(Q, z)
    assert w.r.shape == (0, 3) and w.s.shape == (3, 0)
    assert w.s @ w.r == z and w.r @ w.s == Matrix.identity(Q, 0)


def test_rank_factorization_errors():
    with pytest.raises(PreconditionError, match="not idempotent"):
        rank_factorize_idempotent(F2, M(F2, [[0, 1], [0, 0]]))
    Z = Integers()
    with pytest.raises(UnsupportedRingError):
        rank_factorize_idempotent(Z, Matrix.identity(Z, 2))


@given(st.sampled_from([F2, F5, Q]), seeds)
def test_random_idempotents_split(ring, seed):
    rng = rng_from(seed)
    n = G.dim(rng, 5)
    e = random_idempotent(ring, n, rng)
    assert e @ e == e
    w = rank_factorize_idempotent(ring, e)
    assert verify_split_witness(MatCategory(ring), e, w)
    assert w.r.rows == oracle.rank(e.tolist(), _p(ring)) if n else True


def test_cokernel_examples():
    b = cokernel_of_section(F2, M(F2, [[1], [0]]), M(F2, [[1, 0]]))
    assert b == M(F2, [[0, 1]])
    b = cokernel_of_section(Q, Matrix.identity(Q, 3), Matrix.identity(Q, 3))
    assert b.shape == (0, 3)
    a = M(F3, [[1], [1]])
    b = cokernel_of_section(F3, a, M(F3, [[1, 0]]))
    assert b == M(F3, [[2, 1]])
    assert (b @ a).is_zero()
    assert oracle.rank([[1, 0], [1, 1]], 3) == 2  # [a | complement] invertible


def test_cokernel_requires_retraction():
    with pytest.raises(PreconditionError):
        cokernel_of_section(F2, M(F2, [[1], [0]]), M(F2, [[0, 1]]))


@given(rings, seeds)
def test_cokernel_of_section_is_split(ring, seed):
    rng = rng_from(seed)
    k, extra = G.dim(rng, 3), G.dim(rng, 3)
    n = k + extra
    P = random_invertible(ring, n, rng)
    a = P @ Matrix.identity(ring, n).submatrix(range(n), range(k))
    r = Matrix.identity(ring, n).submatrix(range(k), range(n)) @ inverse(P)
    b = cokernel_of_section(ring, a, r)
    assert (b @ a).is_zero()
    assert rank(b) == b.rows == n - k
    stacked = r.vstack(b)
    N = nullspace(r)
    assert stacked @ a.hstack(N) == Matrix.identity(ring, n)
    kk = kernel_of_retraction(ring, b, N)
    assert (b @ kk).is_zero() and rank(kk) == kk.cols == k


def test_hom_system_examples():
    one, zero = Matrix.identity(F2, 1), Matrix.zeros(F2, 1, 1)
    unk = {"a": (1, 1), "c": (1, 1)}
    dim, _ = solve_hom_system(F2, unk, [[Term("a", None, zero), Term("c", -zero, None)]])
    assert dim == 2 == oracle.brute_ext_hom_dim(2, [[0]], [[0]], 1, 1, 1, 1)
    dim, basis = solve_hom_system(F5, {"a": (1, 1)}, [])
    assert dim == 1 and len(basis) == 1
    dim, basis = solve_hom_system(F2, unk, [[Term("a", None, one), Term("c", -one, None)]])
    assert dim == 1 == oracle.brute_ext_hom_dim(2, [[1]], [[1]], 1, 1, 1, 1)
    assert basis[0]["a"] == basis[0]["c"]


def test_hom_system_shape_error():
    with pytest.raises(ShapeError):
        solve_hom_system(F2, {"a": (1, 2)}, [[Term("a", None, Matrix.identity(F2, 3))]])


# ------------------------------------------------------------------- rect


def test_rect_compose_examples():
    X = RectObject(M(F2, [[1], [0]]))
    ident = RectCategory(F2).identity(X)
    assert ident.A == Matrix.identity(F2, 1) and ident.B == Matrix.identity(F2, 2)
    f = RectMorphism(X, X, M(F2, [[1]]), M(F2, [[1, 0], [0, 0]]))
    assert rect_compose(f, f) == f
    assert rect_compose(ident, f) == f and rect_compose(ident, ident) == ident


def test_rect_morphism_invariant():
    X = RectObject(M(F2, [[1], [0]]))
    with pytest.raises(PreconditionError):
        RectMorphism(X, X, M(F2, [[1]]), M(F2, [[0, 0], [0, 0]]))


def test_rect_direct_sum():
    X = RectObject(Matrix.zeros(F2, 0, 2))
    Y = RectObject(M(F2, [[1]]))
    S = rect_direct_sum(X, Y)
    assert S.X == M(F2, [[0, 0, 1]])
    E = RectObject(Matrix.zeros(F2, 0, 0))
    assert rect_direct_sum(Y, E) == Y
    assert rect_direct_sum(Y, Y).X == Matrix.identity(F2, 2)
