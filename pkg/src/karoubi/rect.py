"""The category ``M`` of rectangular matrices.

An object is a matrix ``X`` in ``Mat_{m,n}(R)``. A morphism ``X -> Y`` with
``Y`` in ``Mat_{p,q}`` is a pair ``(A, B)``, ``A`` of shape ``q x n`` and
``B`` of shape ``p x m``, subject to ``B X = Y A``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .category import AdditiveCategory, Biproduct
from .errors import DomainMismatchError, PreconditionError
from .matrix import Matrix


@dataclass(frozen=True)
class RectObject:
    X: Matrix

    @property
    def m(self):
        return self.X.rows

    @property
    def n(self):
        return self.X.cols

    def to_json(self):
        return {"X": self.X.to_json()}


@dataclass(frozen=True)
class RectMorphism:
    source: RectObject
    target: RectObject
    A: Matrix
    B: Matrix

    def __post_init__(self):
        X, Y = self.source.X, self.target.X
        if self.A.shape != (Y.cols, X.cols) or self.B.shape != (Y.rows, X.rows):
            raise DomainMismatchError(
                f"(A, B) of shapes {self.A.shape}, {self.B.shape} cannot map {X.shape} to {Y.shape}"
            )
        if self.B @ X != Y @ self.A:
            raise PreconditionError("B X != Y A")

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "A": self.A.to_json(), "B": self.B.to_json()}


def rect_compose(g: RectMorphism, f: RectMorphism) -> RectMorphism:
    if f.target != g.source:
        raise DomainMismatchError("middle objects of the composite differ")
    return RectMorphism(f.source, g.target, g.A @ f.A, g.B @ f.B)


def rect_direct_sum(X: RectObject, Y: RectObject) -> RectObject:
    """Block diagonal sum; an empty factor contributes zero rows or columns only."""
    return RectObject(X.X.block_diag(Y.X))


class RectCategory(AdditiveCategory):
    def __init__(self, ring):
        self.ring = ring
        self.name = f"Rect({ring})"

    def dom(self, f):
        return f.source

    def cod(self, f):
        return f.target

    def compose(self, g, f):
        return rect_compose(g, f)

    def identity(self, X):
        R = self.ring
        return RectMorphism(X, X, Matrix.identity(R, X.n), Matrix.identity(R, X.m))

    def zero_object(self):
        return RectObject(Matrix(self.ring, 0, 0))

    def zero(self, X, Y):
        R = self.ring
        return RectMorphism(X, Y, Matrix(R, Y.n, X.n), Matrix(R, Y.m, X.m))

    def add(self, f, g):
        self.check_parallel(f, g)
        return RectMorphism(f.source, f.target, f.A + g.A, f.B + g.B)

    def neg(self, f):
        return RectMorphism(f.source, f.target, -f.A, -f.B)

    def biproduct(self, X, Y):
        R = self.ring
        S = rect_direct_sum(X, Y)

        def inj(k, rows_before, rows_after):
            return Matrix(R, rows_before, k).vstack(Matrix.identity(R, k)).vstack(Matrix(R, rows_after, k))

        iA1, iB1 = inj(X.n, 0, Y.n), inj(X.m, 0, Y.m)
        iA2, iB2 = inj(Y.n, X.n, 0), inj(Y.m, X.m, 0)
        return Biproduct(
            S,
            RectMorphism(X, S, iA1, iB1),
            RectMorphism(Y, S, iA2, iB2),
            RectMorphism(S, X, iA1.T, iB1.T),
            RectMorphism(S, Y, iA2.T, iB2.T),
        )
