"""Idempotent completion ``C~`` and weak idempotent completion ``C^``.

Both are built over any :class:`AdditiveCategory`. Objects of ``C~`` are
pairs ``(X, e)`` with ``e`` idempotent; a morphism ``(X, e_X) -> (Y, e_Y)`` is
a triple ``(e_Y, f, e_X)`` with ``f e_X = f = e_Y f``. ``C^`` keeps exactly
the objects whose complementary idempotent ``id - e`` splits, and each such
object carries the splitting it was admitted with.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .category import (
    AdditiveCategory,
    Biproduct,
    FunctorValue,
    NatTransValue,
    SplitWitness,
    is_idempotent,
    verify_split_witness,
)
from .errors import DomainMismatchError, MembershipError, PreconditionError
from .serialize import to_jsonable


class Tri(enum.Enum):
    """Third truth value for questions a witness-only category cannot decide."""

    UNKNOWN = "unknown"

    def __bool__(self):
        raise TypeError("UNKNOWN has no truth value; compare with `is UNKNOWN`")

    def to_json(self):
        return self.value


UNKNOWN = Tri.UNKNOWN


@dataclass(frozen=True, eq=False)
class CompletedObject:
    X: Any
    e: Any

    def __eq__(self, other):
        if not isinstance(other, CompletedObject):
            return NotImplemented
        return self.X == other.X and self.e == other.e

    def __hash__(self):
        return hash((self.X, self.e))

    def to_json(self):
        return {"X": to_jsonable(self.X), "e": to_jsonable(self.e)}

    def plain(self):
        return CompletedObject(self.X, self.e)


@dataclass(frozen=True, eq=False)
class WicObject(CompletedObject):
    """An object of ``C^``: ``(X, e)`` plus a splitting of ``id_X - e``."""

    witness: SplitWitness = field(default=None)

    def to_json(self):
        d = super().to_json()
        d["witness"] = to_jsonable(self.witness)
        return d


@dataclass(frozen=True)
class CompletedMorphism:
    e_target: Any
    f: Any
    e_source: Any

    def to_json(self):
        return {
            "e_target": to_jsonable(self.e_target),
            "f": to_jsonable(self.f),
            "e_source": to_jsonable(self.e_source),
        }


class IdempotentCompletion(AdditiveCategory):
    """The Karoubi envelope of ``base``.

    Splitting and solving are inherited from the base: an idempotent
    ``(e, a, e)`` splits through ``(Y, id_Y)`` whenever ``a`` splits in the base.
    """

    def __init__(self, base: AdditiveCategory):
        self.base = base
        self.name = f"IC({base.name})"
        self.can_solve = base.can_solve
        self.can_split = base.can_split

    def __eq__(self, other):
        return type(self) is type(other) and self.base == other.base

    def __hash__(self):
        return hash((type(self).__name__, self.base))

    # construction with validation ------------------------------------------

    def obj(self, X, e=None) -> CompletedObject:
        """``(X, e)``, checking idempotency; ``e`` defaults to ``id_X``."""
        if e is None:
            e = self.base.identity(X)
        if not self.base.obj_eq(self.base.dom(e), X):
            raise DomainMismatchError("idempotent does not live on X")
        if not is_idempotent(self.base, e):
            raise PreconditionError("e is not idempotent")
        return CompletedObject(X, e)

    def mor(self, e_target, f, e_source) -> CompletedMorphism:
        m = CompletedMorphism(e_target, f, e_source)
        if not self.is_valid_morphism(m):
            raise PreconditionError("triple violates f e_X = f = e_Y f")
        return m

    def is_valid_object(self, P) -> bool:
        B = self.base
        return B.obj_eq(B.dom(P.e), P.X) and B.is_endo(P.e) and is_idempotent(B, P.e)

    def is_valid_morphism(self, m) -> bool:
        B = self.base
        try:
            return (
                is_idempotent(B, m.e_source)
                and is_idempotent(B, m.e_target)
                and B.eq(B.compose(m.f, m.e_source), m.f)
                and B.eq(B.compose(m.e_target, m.f), m.f)
            )
        except DomainMismatchError:
            return False

    # category structure ------------------------------------------------------

    def dom(self, m):
        return CompletedObject(self.base.dom(m.e_source), m.e_source)

    def cod(self, m):
        return CompletedObject(self.base.dom(m.e_target), m.e_target)

    def obj_eq(self, P, Q):
        return self.base.obj_eq(P.X, Q.X) and self.base.eq(P.e, Q.e)

    def eq(self, m, n):
        B = self.base
        return B.eq(m.e_target, n.e_target) and B.eq(m.f, n.f) and B.eq(m.e_source, n.e_source)

    def compose(self, g, f):
        if not self.base.eq(g.e_source, f.e_target):
            raise DomainMismatchError("source idempotent of g differs from target idempotent of f")
        return CompletedMorphism(g.e_target, self.base.compose(g.f, f.f), f.e_source)

    def identity(self, P):
        return CompletedMorphism(P.e, P.e, P.e)

    def zero_object(self):
        Z = self.base.zero_object()
        return CompletedObject(Z, self.base.identity(Z))

    def zero(self, P, Q):
        return CompletedMorphism(Q.e, self.base.zero(P.X, Q.X), P.e)

    def add(self, m, n):
        self.check_parallel(m, n)
        return CompletedMorphism(m.e_target, self.base.add(m.f, n.f), m.e_source)

    def neg(self, m):
        return CompletedMorphism(m.e_target, self.base.neg(m.f), m.e_source)

    def scale(self, lam, m):
        return CompletedMorphism(m.e_target, self.base.scale(lam, m.f), m.e_source)

    def _sum_idempotent(self, b: Biproduct, e1, e2):
        B = self.base
        return B.add(B.compose_all(b.i1, e1, b.p1), B.compose_all(b.i2, e2, b.p2))

    def _biproduct_object(self, P, Q, b, E):
        return CompletedObject(b.obj, E)

    def biproduct(self, P, Q) -> Biproduct:
        B = self.base
        b = B.biproduct(P.X, Q.X)
        E = self._sum_idempotent(b, P.e, Q.e)
        S = self._biproduct_object(P, Q, b, E)
        c = B.compose
        return Biproduct(
            S,
            CompletedMorphism(E, c(b.i1, P.e), P.e),
            CompletedMorphism(E, c(b.i2, Q.e), Q.e),
            CompletedMorphism(P.e, c(P.e, b.p1), E),
            CompletedMorphism(Q.e, c(Q.e, b.p2), E),
        )

    # splitting and solving ------------------------------------------------------

    def split_idempotent(self, m):
        """Split an idempotent ``(e, a, e)`` by splitting ``a`` in the base."""
        if not self.is_endo(m):
            raise DomainMismatchError("idempotent must be an endomorphism")
        w = self.base.split_idempotent(m.f)
        if w is None:
            return None
        Y = self.base.cod(w.r)
        idY = self.base.identity(Y)
        return SplitWitness(r=CompletedMorphism(idY, w.r, m.e_source), s=CompletedMorphism(m.e_target, w.s, idY))

    def split_cokernel(self, a, r):
        """Cokernel of the section ``a`` through ``(B, e_B - a r)``; needs no base splitting."""
        B = self.base
        q = B.sub(a.e_target, B.compose(a.f, r.f))
        return CompletedMorphism(q, q, a.e_target), CompletedMorphism(a.e_target, q, q)

    def solve_left(self, f, y):
        # any base solution x0 of x0 f = y projects to e_R x0 e_Q
        if not self.base.eq(f.e_source, y.e_source):
            raise DomainMismatchError("x f = y needs f and y with a common domain")
        x0 = self.base.solve_left(f.f, y.f)
        if x0 is None:
            return None
        return CompletedMorphism(y.e_target, self.base.compose_all(y.e_target, x0, f.e_target), f.e_target)

    def solve_right(self, g, y):
        if not self.base.eq(g.e_target, y.e_target):
            raise DomainMismatchError("g x = y needs g and y with a common codomain")
        x0 = self.base.solve_right(g.f, y.f)
        if x0 is None:
            return None
        return CompletedMorphism(g.e_source, self.base.compose_all(g.e_source, x0, y.e_source), y.e_source)


class WeakIdempotentCompletion(IdempotentCompletion):
    """``C^``: the full subcategory of ``C~`` on objects with ``id - e`` split."""

    def __init__(self, base):
        super().__init__(base)
        self.name = f"WIC({base.name})"
        self.ambient = IdempotentCompletion(base)

    def complement(self, P):
        B = self.base
        return B.sub(B.identity(P.X), P.e)

    def zero_object(self):
        B = self.base
        Z = B.zero_object()
        return WicObject(Z, B.identity(Z), SplitWitness(B.zero(Z, Z), B.zero(Z, Z)))

    def _biproduct_object(self, P, Q, b, E):
        B = self.base
        wP, wQ = _wic_witness(self, P), _wic_witness(self, Q)
        YP, YQ = B.cod(wP.r), B.cod(wQ.r)
        bY = B.biproduct(YP, YQ)
        r = B.add(B.compose_all(bY.i1, wP.r, b.p1), B.compose_all(bY.i2, wQ.r, b.p2))
        s = B.add(B.compose_all(b.i1, wP.s, bY.p1), B.compose_all(b.i2, wQ.s, bY.p2))
        return WicObject(b.obj, E, SplitWitness(r, s))

    def is_member(self, P) -> bool:
        return isinstance(P, WicObject) and verify_split_witness(self.base, self.complement(P), P.witness)


def _wic_witness(W: WeakIdempotentCompletion, P):
    if not isinstance(P, WicObject):
        raise MembershipError(f"{P!r} carries no splitting of id - e")
    return P.witness


# -------------------------------------------------------------- functors


def include_into_completion(base: AdditiveCategory, target: IdempotentCompletion | None = None) -> FunctorValue:
    """``S_I``: ``X -> (X, id)``, ``f -> (id, f, id)``."""
    C = target or IdempotentCompletion(base)
    B = base
    return FunctorValue(
        B,
        C,
        lambda X: CompletedObject(X, B.identity(X)),
        lambda f: CompletedMorphism(B.identity(B.cod(f)), f, B.identity(B.dom(f))),
        name="S_I",
    )


def include_into_wic(base: AdditiveCategory, target: WeakIdempotentCompletion | None = None) -> FunctorValue:
    """``S_K``: ``X -> (X, id)`` with ``0 = id - id`` split through the zero object."""
    W = target or WeakIdempotentCompletion(base)
    B = base

    def on_obj(X):
        Z = B.zero_object()
        return WicObject(X, B.identity(X), SplitWitness(B.zero(X, Z), B.zero(Z, X)))

    return FunctorValue(
        B,
        W,
        on_obj,
        lambda f: CompletedMorphism(B.identity(B.cod(f)), f, B.identity(B.dom(f))),
        name="S_K",
    )


def wic_into_completion(W: WeakIdempotentCompletion) -> FunctorValue:
    """``S_L``: forget the splitting witness."""
    return FunctorValue(W, W.ambient, lambda P: P.plain(), lambda m: m, name="S_L")


def complete_functor(F: FunctorValue, source=None, target=None) -> FunctorValue:
    """``F~(X, e) = (FX, Fe)`` and ``F~(e_Y, f, e_X) = (F e_Y, F f, F e_X)``."""
    S = source or IdempotentCompletion(F.source)
    T = target or IdempotentCompletion(F.target)
    return FunctorValue(
        S,
        T,
        lambda P: CompletedObject(F.obj(P.X), F.mor(P.e)),
        lambda m: CompletedMorphism(F.mor(m.e_target), F.mor(m.f), F.mor(m.e_source)),
        name=f"{F.name}~",
    )


def complete_nattrans(nt: NatTransValue, Ft: FunctorValue | None = None, Gt: FunctorValue | None = None) -> NatTransValue:
    """Component at ``(X, e)`` is ``(Ge, Ge . nt_X . Fe, Fe)``."""
    F, G = nt.source, nt.target
    Ft = Ft or complete_functor(F)
    Gt = Gt or complete_functor(G)
    D = F.target

    def component(P):
        Fe, Ge = F.mor(P.e), G.mor(P.e)
        return CompletedMorphism(Ge, D.compose_all(Ge, nt.at(P.X), Fe), Fe)

    return NatTransValue(Ft, Gt, component, name=f"{nt.name}~")


def completed_biproduct(C: IdempotentCompletion, P, Q) -> Biproduct:
    return C.biproduct(P, Q)


# ---------------------------------------------------------- memberships


def wic_membership(base: AdditiveCategory, P, witness: SplitWitness | None = None):
    """``P`` as a :class:`WicObject`, or :data:`UNKNOWN` when undecidable here.

    A supplied witness must verify. Without one the base splitter is used;
    over a field ``id - e`` always splits, so a definitive negative never arises.
    """
    comp = base.sub(base.identity(P.X), P.e)
    if witness is not None:
        if not verify_split_witness(base, comp, witness):
            raise PreconditionError("supplied witness does not split id - e")
        return WicObject(P.X, P.e, witness)
    if isinstance(P, WicObject) and P.witness is not None and verify_split_witness(base, comp, P.witness):
        return P
    if not base.can_split:
        return UNKNOWN
    w = base.split_idempotent(comp)
    if w is None:
        return UNKNOWN
    return WicObject(P.X, P.e, w)


@dataclass(frozen=True)
class ConflationTriple:
    """Composable ``f: A -> B`` and ``g: B -> E`` with optional witnesses."""

    f: Any
    g: Any
    retraction: Any = None
    section: Any = None

    def to_json(self):
        return {k: to_jsonable(getattr(self, k)) for k in ("f", "g", "retraction", "section")}


@dataclass(frozen=True)
class SplitExactWitness:
    """``r f = id``, ``g s = id``, ``r s = 0`` and ``f r + s g = id``."""

    r: Any
    s: Any


def split_exact_witness(cat: AdditiveCategory, seq: ConflationTriple):
    """Decide split exactness of ``seq``; returns a witness, ``None`` or :data:`UNKNOWN`.

    ``(f, g)`` is split exact iff ``g f = 0``, ``f`` has a retraction ``r``,
    ``g`` has a section ``s`` and, with ``s' = (id - f r) s``, ``f r + s' g = id``.
    The last test does not depend on the choices of ``r`` and ``s``.
    """
    f, g = seq.f, seq.g
    cat.check_composable(g, f)
    A, Bo, E = cat.dom(f), cat.cod(f), cat.cod(g)
    c, eq = cat.compose, cat.eq
    if not eq(c(g, f), cat.zero(A, E)):
        return None
    r = seq.retraction
    if r is not None:
        if not eq(c(r, f), cat.identity(A)):
            raise PreconditionError("supplied retraction does not satisfy r f = id")
    elif cat.can_solve:
        r = cat.find_retraction(f)
        if r is None:
            return None
    else:
        return UNKNOWN
    s = seq.section
    if s is not None:
        if not eq(c(g, s), cat.identity(E)):
            raise PreconditionError("supplied section does not satisfy g s = id")
    elif cat.can_solve:
        s = cat.find_section(g)
        if s is None:
            return None
    else:
        return UNKNOWN
    s2 = cat.sub(s, cat.compose_all(f, r, s))
    if not eq(cat.add(c(f, r), c(s2, g)), cat.identity(Bo)):
        return None
    return SplitExactWitness(r, s2)


def split_conflation_membership(cat: AdditiveCategory, seq: ConflationTriple):
    """``True``/``False`` for split exactness, :data:`UNKNOWN` without witnesses."""
    w = split_exact_witness(cat, seq)
    if w is UNKNOWN:
        return UNKNOWN
    return w is not None


@dataclass(frozen=True)
class SummandWitness:
    """``seq`` as a retract of ``S_I(base_seq)``: ``pi o iota = id`` on each term."""

    base_seq: ConflationTriple
    iota: tuple
    pi: tuple


def verify_summand_witness(C: IdempotentCompletion, seq: ConflationTriple, w: SummandWitness, base_check=None) -> bool:
    """Check that ``seq`` is a direct summand of the image of a base conflation.

    ``base_check`` decides membership of ``w.base_seq`` in the base exact
    structure and defaults to split exactness.
    """
    base = C.base
    base_check = base_check or (lambda s: split_conflation_membership(base, s))
    if base_check(w.base_seq) is not True:
        return False
    SI = include_into_completion(base, C)
    f0, g0 = SI.mor(w.base_seq.f), SI.mor(w.base_seq.g)
    (iA, iB, iE), (pA, pB, pE) = w.iota, w.pi
    c, eq = C.compose, C.eq
    try:
        return (
            eq(c(iB, seq.f), c(f0, iA))
            and eq(c(iE, seq.g), c(g0, iB))
            and eq(c(seq.f, pA), c(pB, f0))
            and eq(c(seq.g, pB), c(pE, g0))
            and eq(c(pA, iA), C.identity(C.dom(seq.f)))
            and eq(c(pB, iB), C.identity(C.cod(seq.f)))
            and eq(c(pE, iE), C.identity(C.cod(seq.g)))
        )
    except DomainMismatchError:
        return False


# ------------------------------------------------------------------- json


def completed_object_from_json(d, ring):
    from .matrix import Matrix

    return CompletedObject(int(d["X"]), Matrix.from_json(d["e"], ring))


def completed_morphism_from_json(d, ring):
    from .matrix import Matrix

    return CompletedMorphism(*(Matrix.from_json(d[k], ring) for k in ("e_target", "f", "e_source")))
