"""Immutable exact matrices and the matrix category ``Mat(R)``.

A :class:`Matrix` always carries both dimensions, so the empty matrices
``m x 0`` and ``0 x n`` are distinct values. Objects of ``Mat(R)`` are
natural numbers ``n`` standing for ``R^n``; a morphism ``n -> m`` is an
``m x n`` matrix.
"""
from __future__ import annotations

from .category import AdditiveCategory, Biproduct
from .errors import DomainMismatchError, PreconditionError, ShapeError
from .rings import ExactRing, PrimeField, ring_from_tag
from . import _kernels


class Matrix:
    __slots__ = ("ring", "rows", "cols", "entries", "_hash")

    def __init__(self, ring: ExactRing, rows: int, cols: int, entries=None, *, _trusted=False):
        if rows < 0 or cols < 0:
            raise ShapeError("matrix dimensions must be non-negative")
        if _trusted:
            data = entries
        elif entries is None:
            data = ((ring.zero,) * cols,) * rows
        else:
            data = tuple(tuple(ring.coerce(x) for x in row) for row in entries)
            if rows == 0 and data not in ((),):
                raise ShapeError("a 0-row matrix has no entries")
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ShapeError(f"entries do not form a {rows}x{cols} table")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: ExactRing, rows):
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeError("use Matrix(ring, 0, n) for matrices without rows")
        return cls(ring, len(rows), len(rows[0]), rows)

    @classmethod
    def zeros(cls, ring, rows, cols):
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring, n):
        o, z = ring.one, ring.zero
        return cls(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), _trusted=True)

    @classmethod
    def diag(cls, ring, values):
        n = len(values)
        z = ring.zero
        return cls(ring, n, n, [[values[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, ring, values):
        return cls(ring, len(values), 1, [[v] for v in values])

    @classmethod
    def row(cls, ring, values):
        return cls(ring, 1, len(values), [list(values)])

    @classmethod
    def random(cls, ring, rows, cols, rng):
        return cls(ring, rows, cols, [[ring.random_element(rng) for _ in range(cols)] for _ in range(rows)])

    # basic protocol ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        if self.rows * self.cols == 0:
            return f"Matrix({self.ring}, {self.rows}x{self.cols}, empty)"
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"Matrix({self.ring}, [{body}])"

    def tolist(self):
        return [list(r) for r in self.entries]

    # arithmetic ---------------------------------------------------------------

    def _same_ring(self, other):
        if self.ring != other.ring:
            raise PreconditionError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_ring(other)
        if self.cols != other.rows:
            raise DomainMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        data = _kernels.matmul(self.ring, self.entries, other.entries, self.rows, self.cols, other.cols)
        return Matrix(self.ring, self.rows, other.cols, data, _trusted=True)

    def _zip(self, other, op):
        self._same_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        data = tuple(tuple(op(x, y) for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries))
        return Matrix(self.ring, self.rows, self.cols, data, _trusted=True)

    def __add__(self, other):
        return self._zip(other, self.ring.add)

    def __sub__(self, other):
        return self._zip(other, self.ring.sub)

    def __neg__(self):
        neg = self.ring.neg
        data = tuple(tuple(neg(x) for x in r) for r in self.entries)
        return Matrix(self.ring, self.rows, self.cols, data, _trusted=True)

    def scale(self, lam):
        lam = self.ring.coerce(lam)
        mul = self.ring.mul
        data = tuple(tuple(mul(lam, x) for x in r) for r in self.entries)
        return Matrix(self.ring, self.rows, self.cols, data, _trusted=True)

    @property
    def T(self):
        if self.rows == 0 or self.cols == 0:
            return Matrix(self.ring, self.cols, self.rows)
        return Matrix(self.ring, self.cols, self.rows, tuple(zip(*self.entries)), _trusted=True)

    def is_zero(self):
        z = self.ring.zero
        return all(x == z for r in self.entries for x in r)

    def is_square(self):
        return self.rows == self.cols

    # blocks ---------------------------------------------------------------------

    def submatrix(self, row_idx, col_idx):
        row_idx, col_idx = list(row_idx), list(col_idx)
        data = tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx)
        return Matrix(self.ring, len(row_idx), len(col_idx), data, _trusted=True)

    def hstack(self, other):
        self._same_ring(other)
        if self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts")
        data = tuple(a + b for a, b in zip(self.entries, other.entries))
        return Matrix(self.ring, self.rows, self.cols + other.cols, data, _trusted=True)

    def vstack(self, other):
        self._same_ring(other)
        if self.cols != other.cols:
            raise ShapeError("vstack needs equal column counts")
        return Matrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries, _trusted=True)

    def block_diag(self, other):
        """``[[self, 0], [0, other]]``; empty dimensions insert zero rows/columns."""
        self._same_ring(other)
        z = self.ring.zero
        top = tuple(r + (z,) * other.cols for r in self.entries)
        bottom = tuple((z,) * self.cols + r for r in other.entries)
        return Matrix(self.ring, self.rows + other.rows, self.cols + other.cols, top + bottom, _trusted=True)

    def repeat_diag(self, k: int):
        """Block diagonal of ``k`` copies; ``k = 0`` gives the ``0 x 0`` matrix."""
        out = Matrix(self.ring, 0, 0)
        for _ in range(k):
            out = out.block_diag(self)
        return out

    # json ---------------------------------------------------------------------

    def to_json(self):
        d = {"ring": self.ring.tag, "rows": self.rows, "cols": self.cols}
        if isinstance(self.ring, PrimeField):
            d["p"] = self.ring.p
        if self.rows * self.cols:
            d["entries"] = [[self.ring.entry_to_json(x) for x in r] for r in self.entries]
        return d

    @classmethod
    def from_json(cls, d, ring: ExactRing | None = None):
        """Parse the matrix schema, or a bare list of rows when ``ring`` is given."""
        if isinstance(d, list):
            if ring is None:
                raise PreconditionError("a bare entry list needs an explicit ring")
            return cls.from_rows(ring, d)
        tag = d.get("ring")
        if tag is None:
            if ring is None:
                raise PreconditionError("matrix JSON lacks a ring")
        else:
            parsed = ring_from_tag("fp" + str(d["p"]) if tag == "fp" else tag)
            if ring is not None and ring != parsed:
                raise PreconditionError(f"matrix ring {parsed} differs from expected {ring}")
            ring = parsed
        rows, cols = int(d["rows"]), int(d["cols"])
        entries = d.get("entries")
        if rows * cols == 0:
            if entries not in (None, [], [[]] * rows):
                raise ShapeError("empty matrix must omit entries")
            return cls(ring, rows, cols)
        return cls(ring, rows, cols, [[ring.entry_from_json(x) for x in r] for r in entries])


class MatCategory(AdditiveCategory):
    """``Mat(R)``: objects are dimensions, morphisms ``n -> m`` are ``m x n`` matrices."""

    def __init__(self, ring: ExactRing):
        self.ring = ring
        self.name = f"Mat({ring})"
        self.can_solve = ring.is_field
        self.can_split = ring.is_field

    def __eq__(self, other):
        return type(self) is type(other) and self.ring == other.ring

    def __hash__(self):
        return hash((type(self).__name__, self.ring))

    def __repr__(self):
        return f"{type(self).__name__}({self.ring!r})"

    def _check(self, f):
        if not isinstance(f, Matrix) or f.ring != self.ring:
            raise DomainMismatchError(f"{f!r} is not a morphism of {self.name}")

    def dom(self, f):
        return f.cols

    def cod(self, f):
        return f.rows

    def compose(self, g, f):
        self._check(f)
        self._check(g)
        if f.rows != g.cols:
            raise DomainMismatchError(f"cannot compose {g.shape} after {f.shape}")
        return g @ f

    def identity(self, n):
        return Matrix.identity(self.ring, n)

    def zero_object(self):
        return 0

    def add(self, f, g):
        return f + g

    def neg(self, f):
        return -f

    def zero(self, X, Y):
        return Matrix(self.ring, Y, X)

    def scale(self, lam, f):
        return f.scale(lam)

    def biproduct(self, X, Y):
        R = self.ring
        i1 = Matrix.identity(R, X).vstack(Matrix(R, Y, X))
        i2 = Matrix(R, X, Y).vstack(Matrix.identity(R, Y))
        return Biproduct(X + Y, i1, i2, i1.T, i2.T)

    def direct_sum_morphism(self, f, g):
        return f.block_diag(g)

    def solve_left(self, f, y):
        if not self.can_solve:
            return None
        from .linalg import solve

        if f.cols != y.cols:
            raise DomainMismatchError("x f = y needs f and y with a common domain")
        # x f = y  <=>  f^T x^T = y^T
        x = solve(f.T, y.T)
        return None if x is None else x.T

    def solve_right(self, g, y):
        if not self.can_solve:
            return None
        from .linalg import solve

        if g.rows != y.rows:
            raise DomainMismatchError("g x = y needs g and y with a common codomain")
        return solve(g, y)

    def split_cokernel(self, a, r):
        """``(b, t)`` with ``b a = 0``, ``b t = id``, ``r t = 0`` and ``a r + t b = id``."""
        from .linalg import cokernel_of_section, nullspace

        return cokernel_of_section(self.ring, a, r), nullspace(r)

    def split_idempotent(self, e):
        if not self.can_split:
            return None
        from .linalg import rank_factorize_idempotent

        return rank_factorize_idempotent(self.ring, e)


class WitnessOnlyMatCategory(MatCategory):
    """``Mat(R)`` with detection disabled: splittings must be supplied by callers."""

    def __init__(self, ring):
        super().__init__(ring)
        self.name = f"Mat({ring})[witness-only]"
        self.can_solve = False
        self.can_split = False
