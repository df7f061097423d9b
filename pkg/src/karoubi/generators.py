"""Seeded random instance data.

Idempotents are always conjugates ``P diag(1..1, 0..0) P^-1`` and every
generated structure satisfies its invariant by construction (for example
tilde extensions are projections ``e_A x e_C``). Each function takes an
explicit :class:`random.Random`, so a case is replayed from its seed alone.
"""
from __future__ import annotations

from dataclasses import dataclass

from .completion import CompletedMorphism, CompletedObject
from .extensions import ExtensionObject, ExtMorphism, TildeExtension, hom_ext_basis
from .linalg import combine_basis, inverse, random_idempotent, random_invertible, rank_factorize_idempotent
from .matrix import Matrix


def dim(rng, max_dim, lo=0):
    return rng.randint(lo, max(lo, max_dim))


def matrix(ring, m, n, rng):
    return Matrix.random(ring, m, n, rng)


def idempotent(ring, n, rng, k=None):
    return random_idempotent(ring, n, rng, k)


def complement(e: Matrix) -> Matrix:
    return Matrix.identity(e.ring, e.rows) - e


def sub_idempotent(ring, e, rng):
    """An idempotent ``a`` with ``a e = a = e a``: ``s i r`` for ``e = s r``."""
    w = rank_factorize_idempotent(ring, e)
    return w.s @ idempotent(ring, w.r.rows, rng) @ w.r


# ----------------------------------------------------------- C~ over Mat


class MatSampler:
    """Objects and morphisms of ``Mat(R)`` for the additive law checker."""

    def __init__(self, ring, max_dim):
        self.ring, self.max_dim = ring, max_dim

    def object(self, rng):
        return dim(rng, self.max_dim)

    def morphism(self, rng, X, Y):
        return matrix(self.ring, Y, X, rng)


class CompletionSampler:
    """Objects ``(n, e)`` and morphisms ``e_Y f e_X`` of ``C~`` over ``Mat(R)``."""

    def __init__(self, ring, max_dim):
        self.ring, self.max_dim = ring, max_dim

    def object(self, rng):
        n = dim(rng, self.max_dim)
        return CompletedObject(n, idempotent(self.ring, n, rng))

    def morphism(self, rng, P, Q):
        f = matrix(self.ring, Q.X, P.X, rng)
        return CompletedMorphism(Q.e, Q.e @ f @ P.e, P.e)

    def idempotent_on(self, rng, P):
        a = sub_idempotent(self.ring, P.e, rng)
        return CompletedMorphism(P.e, a, P.e)


# -------------------------------------------------------------- extensions


def ext_object(ring, rng, max_dim):
    A, C = dim(rng, max_dim), dim(rng, max_dim)
    return ExtensionObject(A, C, matrix(ring, A, C, rng))


def ext_morphism(ring, x, y, rng):
    """A uniformly random element of the hom space ``Ext(x, y)``."""
    unknowns, (d, basis) = hom_ext_basis(ring, x, y)
    sol = combine_basis(ring, basis, [ring.random_element(rng) for _ in range(d)], unknowns)
    return ExtMorphism(x, y, sol["a"], sol["c"])


def endo_compatible(ring, e_A, e_C, rng):
    """``x`` with ``e_A x = x e_C``: ``e_A x0 e_C + (1 - e_A) x1 (1 - e_C)``."""
    m, n = e_A.rows, e_C.rows
    fA, fC = complement(e_A), complement(e_C)
    return e_A @ matrix(ring, m, n, rng) @ e_C + fA @ matrix(ring, m, n, rng) @ fC


@dataclass(frozen=True)
class PropACase:
    x: ExtensionObject
    e_A: Matrix
    e_C: Matrix


def prop_a_case(ring, rng, max_dim):
    A, C = dim(rng, max_dim), dim(rng, max_dim)
    e_A, e_C = idempotent(ring, A, rng), idempotent(ring, C, rng)
    return PropACase(ExtensionObject(A, C, endo_compatible(ring, e_A, e_C, rng)), e_A, e_C)


def completed_ext_object(ring, rng, max_dim):
    c = prop_a_case(ring, rng, max_dim)
    return CompletedObject(c.x, ExtMorphism(c.x, c.x, c.e_A, c.e_C))


def completed_ext_morphism(ring, X, Y, rng):
    f = ext_morphism(ring, X.X, Y.X, rng)
    g = ExtMorphism(X.X, Y.X, Y.e.a @ f.a @ X.e.a, Y.e.c @ f.c @ X.e.c)
    return CompletedMorphism(Y.e, g, X.e)


# ---------------------------------------------------------- tilde extensions


def tilde_element(ring, rng, max_dim, A=None, C=None):
    A = dim(rng, max_dim) if A is None else A
    C = dim(rng, max_dim) if C is None else C
    e_A, e_C = idempotent(ring, A, rng), idempotent(ring, C, rng)
    return TildeExtension(e_A, e_A @ matrix(ring, A, C, rng) @ e_C, e_C)


def tilde_object(ring, rng, max_dim):
    t = tilde_element(ring, rng, max_dim)
    return ExtensionObject(CompletedObject(t.e_A.rows, t.e_A), CompletedObject(t.e_C.rows, t.e_C), t)


def tilde_morphism(ring, x, y, rng):
    """Random ``x -> y`` in ``Ext_{E~}(C~)``: a raw Ext morphism, projected."""
    raw = ext_morphism(ring, ExtensionObject(x.A.X, x.C.X, x.alpha.alpha), ExtensionObject(y.A.X, y.C.X, y.alpha.alpha), rng)
    a = y.A.e @ raw.a @ x.A.e
    c = y.C.e @ raw.c @ x.C.e
    return ExtMorphism(x, y, CompletedMorphism(y.A.e, a, x.A.e), CompletedMorphism(y.C.e, c, x.C.e))


# ----------------------------------------------------------- conflations


def ext_section(ring, rng, max_dim):
    """A section ``(a, c): x -> y`` in ``Ext_Hom(Mat)`` with retractions ``(r_a, r_c)``."""
    x = ext_object(ring, rng, max_dim)
    z = ext_object(ring, rng, max_dim)
    P = random_invertible(ring, x.A + z.A, rng)
    Q = random_invertible(ring, x.C + z.C, rng)
    Pi, Qi = inverse(P), inverse(Q)
    y = ExtensionObject(x.A + z.A, x.C + z.C, P @ x.alpha.block_diag(z.alpha) @ Qi)
    iA = Matrix.identity(ring, x.A).vstack(Matrix(ring, z.A, x.A))
    iC = Matrix.identity(ring, x.C).vstack(Matrix(ring, z.C, x.C))
    m = ExtMorphism(x, y, P @ iA, Q @ iC)
    return m, (iA.T @ Pi, iC.T @ Qi)


def _upper(ring, x, theta, z):
    return x.hstack(theta).vstack(Matrix(ring, z.rows, x.cols).hstack(z))


def _proj(ring, k, before, after):
    return Matrix(ring, k, before).hstack(Matrix.identity(ring, k)).hstack(Matrix(ring, k, after))


def tilde_conflation(ring, rng, max_dim, conjugate=True):
    """A conflation ``x -> y -> z`` of ``Ext_{E~}(C~)``.

    The middle term starts as ``[[x, theta], [0, z]]`` over ``e_A + e_E`` and
    ``e_C + e_G`` and is then moved by random invertible matrices.
    """
    x, z = tilde_element(ring, rng, max_dim), tilde_element(ring, rng, max_dim)
    A, C, E_, G = x.e_A.rows, x.e_C.rows, z.e_A.rows, z.e_C.rows
    theta = x.e_A @ matrix(ring, A, G, rng) @ z.e_C
    beta = _upper(ring, x.alpha, theta, z.alpha)
    eB, eD = x.e_A.block_diag(z.e_A), x.e_C.block_diag(z.e_C)
    a, c = _proj(ring, A, 0, E_).T @ x.e_A, _proj(ring, C, 0, G).T @ x.e_C
    b, d = z.e_A @ _proj(ring, E_, A, 0), z.e_C @ _proj(ring, G, C, 0)
    if conjugate:
        P, Q = random_invertible(ring, A + E_, rng), random_invertible(ring, C + G, rng)
        Pi, Qi = inverse(P), inverse(Q)
        beta, eB, eD = P @ beta @ Qi, P @ eB @ Pi, Q @ eD @ Qi
        a, c, b, d = P @ a, Q @ c, b @ Pi, d @ Qi
    y = TildeExtension(eB, beta, eD)

    def obj(t):
        return ExtensionObject(CompletedObject(t.e_A.rows, t.e_A), CompletedObject(t.e_C.rows, t.e_C), t)

    X, Y, Z = obj(x), obj(y), obj(z)
    f = ExtMorphism(X, Y, CompletedMorphism(eB, a, x.e_A), CompletedMorphism(eD, c, x.e_C))
    g = ExtMorphism(Y, Z, CompletedMorphism(z.e_A, b, eB), CompletedMorphism(z.e_C, d, eD))
    return f, g


def completed_ext_conflation(ring, rng, max_dim, conjugate=True):
    """A conflation of the completed extension category, as a retract of a normal one."""
    p, q = prop_a_case(ring, rng, max_dim), prop_a_case(ring, rng, max_dim)
    e_A, e_C, e_E, e_G = p.e_A, p.e_C, q.e_A, q.e_C
    A, C, E_, G = e_A.rows, e_C.rows, e_E.rows, e_G.rows
    theta = endo_compatible(ring, e_A, e_G, rng)
    beta = _upper(ring, p.x.alpha, theta, q.x.alpha)
    eB, eD = e_A.block_diag(e_E), e_C.block_diag(e_G)
    iA, iC = _proj(ring, A, 0, E_).T, _proj(ring, C, 0, G).T
    pE, pG = _proj(ring, E_, A, 0), _proj(ring, G, C, 0)
    if conjugate:
        P, Q = random_invertible(ring, A + E_, rng), random_invertible(ring, C + G, rng)
        Pi, Qi = inverse(P), inverse(Q)
        beta, eB, eD = P @ beta @ Qi, P @ eB @ Pi, Q @ eD @ Qi
        iA, iC, pE, pG = P @ iA, Q @ iC, pE @ Pi, pG @ Qi
    x, z = p.x, q.x
    y = ExtensionObject(A + E_, C + G, beta)
    ex, ey, ez = ExtMorphism(x, x, e_A, e_C), ExtMorphism(y, y, eB, eD), ExtMorphism(z, z, e_E, e_G)
    F = CompletedMorphism(ey, ExtMorphism(x, y, eB @ iA @ e_A, eD @ iC @ e_C), ex)
    G_ = CompletedMorphism(ez, ExtMorphism(y, z, e_E @ pE @ eB, e_G @ pG @ eD), ey)
    return F, G_


# ------------------------------------------------------- ex-functor samples


def exfunctor_sample(ring, rng, max_dim):
    """``(x, x2, a, d)`` for the naturality checks of a Gamma on Hom."""
    A, C = dim(rng, max_dim), dim(rng, max_dim)
    x, x2 = matrix(ring, A, C, rng), matrix(ring, A, C, rng)
    a = matrix(ring, dim(rng, max_dim), A, rng)
    d = matrix(ring, C, dim(rng, max_dim), rng)
    return x, x2, a, d


def rect_object(ring, rng, max_dim):
    from .rect import RectObject

    return RectObject(matrix(ring, dim(rng, max_dim), dim(rng, max_dim), rng))


def rect_morphism(ring, X, Y, rng):
    from .rect import RectMorphism

    f = ext_morphism(ring, ExtensionObject(X.m, X.n, X.X), ExtensionObject(Y.m, Y.n, Y.X), rng)
    return RectMorphism(X, Y, f.c, f.a)
