"""Biadditive functors, categories of extensions and their exact structure.

A bifunctor here is an object with the group operations on each ``E(C, A)``
and two actions: ``act_left(a, x)`` for ``a_E x = E(C, a)(x)`` and
``act_right(d, x)`` for ``d^E x = E(d, A)(x)``. The category ``Ext_E(C)``
has the elements as objects; a morphism ``x -> y`` is a pair ``(a, c)`` with
``a_E x = c^E y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .category import AdditiveCategory, Biproduct, SplitWitness, verify_split_witness
from .completion import (
    UNKNOWN,
    CompletedMorphism,
    CompletedObject,
    ConflationTriple,
    IdempotentCompletion,
    WicObject,
    WeakIdempotentCompletion,
    split_conflation_membership,
    split_exact_witness,
    wic_membership,
)
from .errors import (
    DomainMismatchError,
    InternalConsistencyError,
    InvalidTildeExtensionError,
    MembershipError,
    PreconditionError,
)
from .serialize import to_jsonable


class Bifunctor:
    """Interface for a biadditive ``E: C^op x C -> Ab``; see the module docstring."""

    category: AdditiveCategory
    name = "E"

    def zero(self, C, A):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return x == y

    def act_left(self, a, x):
        raise NotImplementedError

    def act_right(self, d, x):
        raise NotImplementedError

    def endpoints(self, x):
        """``(C, A)`` with ``x`` in ``E(C, A)``."""
        raise NotImplementedError

    def contains(self, C, A, x) -> bool:
        try:
            Cx, Ax = self.endpoints(x)
        except (AttributeError, TypeError):
            return False
        cat = self.category
        return cat.obj_eq(Cx, C) and cat.obj_eq(Ax, A)

    def act(self, d, a, x):
        """``E(d, a)(x)``."""
        return self.act_left(a, self.act_right(d, x))

    def sub(self, x, y):
        return self.add(x, self.neg(y))


class HomBifunctor(Bifunctor):
    """``E(C, A) = C(C, A)``; both actions are composition."""

    def __init__(self, category):
        self.category = category
        self.name = f"Hom[{category.name}]"

    def __eq__(self, other):
        return type(self) is type(other) and self.category == other.category

    def __hash__(self):
        return hash((type(self).__name__, self.category))

    def zero(self, C, A):
        return self.category.zero(C, A)

    def add(self, x, y):
        return self.category.add(x, y)

    def neg(self, x):
        return self.category.neg(x)

    def eq(self, x, y):
        return self.category.eq(x, y)

    def scale(self, lam, x):
        return self.category.scale(lam, x)

    def act_left(self, a, x):
        return self.category.compose(a, x)

    def act_right(self, d, x):
        return self.category.compose(x, d)

    def endpoints(self, x):
        return self.category.dom(x), self.category.cod(x)


def hom_bifunctor(category) -> HomBifunctor:
    return HomBifunctor(category)


# --------------------------------------------------------------- Ext_E(C)


@dataclass(frozen=True)
class ExtensionObject:
    A: Any
    C: Any
    alpha: Any

    def to_json(self):
        return {"A": to_jsonable(self.A), "C": to_jsonable(self.C), "alpha": to_jsonable(self.alpha)}


@dataclass(frozen=True)
class ExtMorphism:
    source: ExtensionObject
    target: ExtensionObject
    a: Any
    c: Any

    def to_json(self):
        return {
            "source": to_jsonable(self.source),
            "target": to_jsonable(self.target),
            "a": to_jsonable(self.a),
            "c": to_jsonable(self.c),
        }


def ext_morphism_check(E: Bifunctor, m: ExtMorphism) -> bool:
    """``a_E x = c^E y``; inconsistent endpoints raise :class:`DomainMismatchError`."""
    cat = E.category
    x, y = m.source, m.target
    ends = ((cat.dom(m.a), x.A), (cat.cod(m.a), y.A), (cat.dom(m.c), x.C), (cat.cod(m.c), y.C))
    if not all(cat.obj_eq(u, v) for u, v in ends):
        raise DomainMismatchError("(a, c) does not run between the endpoints of the extensions")
    return E.eq(E.act_left(m.a, x.alpha), E.act_right(m.c, y.alpha))


class ExtCategory(AdditiveCategory):
    """``Ext_E(C)`` with componentwise structure."""

    def __init__(self, E: Bifunctor):
        self.E = E
        self.base = E.category
        self.name = f"Ext({E.name})"

    def __eq__(self, other):
        return type(self) is type(other) and self.E == other.E

    def __hash__(self):
        return hash((type(self).__name__, self.E))

    def obj(self, A, C, alpha) -> ExtensionObject:
        if not self.E.contains(C, A, alpha):
            raise PreconditionError("alpha is not an element of E(C, A)")
        return ExtensionObject(A, C, alpha)

    def is_valid_object(self, x) -> bool:
        valid = getattr(self.base, "is_valid_object", None)
        if valid is not None and not (valid(x.A) and valid(x.C)):
            return False
        return bool(self.E.contains(x.C, x.A, x.alpha))

    def mor(self, source, target, a, c) -> ExtMorphism:
        m = ExtMorphism(source, target, a, c)
        if not ext_morphism_check(self.E, m):
            raise PreconditionError("(a, c) violates a_E x = c^E y")
        return m

    def dom(self, m):
        return m.source

    def cod(self, m):
        return m.target

    def obj_eq(self, x, y):
        B = self.base
        return B.obj_eq(x.A, y.A) and B.obj_eq(x.C, y.C) and self.E.eq(x.alpha, y.alpha)

    def eq(self, m, n):
        B = self.base
        return (
            self.obj_eq(m.source, n.source)
            and self.obj_eq(m.target, n.target)
            and B.eq(m.a, n.a)
            and B.eq(m.c, n.c)
        )

    def compose(self, g, f):
        self.check_composable(g, f)
        B = self.base
        return ExtMorphism(f.source, g.target, B.compose(g.a, f.a), B.compose(g.c, f.c))

    def identity(self, x):
        B = self.base
        return ExtMorphism(x, x, B.identity(x.A), B.identity(x.C))

    def zero_object(self):
        Z = self.base.zero_object()
        return ExtensionObject(Z, Z, self.E.zero(Z, Z))

    def zero(self, x, y):
        B = self.base
        return ExtMorphism(x, y, B.zero(x.A, y.A), B.zero(x.C, y.C))

    def add(self, m, n):
        self.check_parallel(m, n)
        B = self.base
        return ExtMorphism(m.source, m.target, B.add(m.a, n.a), B.add(m.c, n.c))

    def neg(self, m):
        B = self.base
        return ExtMorphism(m.source, m.target, B.neg(m.a), B.neg(m.c))

    def scale(self, lam, m):
        B = self.base
        return ExtMorphism(m.source, m.target, B.scale(lam, m.a), B.scale(lam, m.c))

    def biproduct(self, x, y) -> Biproduct:
        B, E = self.base, self.E
        bA, bC = B.biproduct(x.A, y.A), B.biproduct(x.C, y.C)
        alpha = E.add(E.act(bC.p1, bA.i1, x.alpha), E.act(bC.p2, bA.i2, y.alpha))
        s = ExtensionObject(bA.obj, bC.obj, alpha)
        return Biproduct(
            s,
            ExtMorphism(x, s, bA.i1, bC.i1),
            ExtMorphism(y, s, bA.i2, bC.i2),
            ExtMorphism(s, x, bA.p1, bC.p1),
            ExtMorphism(s, y, bA.p2, bC.p2),
        )

    def checked(self, m):
        if not ext_morphism_check(self.E, m):
            raise InternalConsistencyError("Ext operation produced an invalid morphism; the bifunctor is broken")
        return m


def ext_compose(cat: ExtCategory, g, f):
    return cat.checked(cat.compose(g, f))


def ext_add(cat: ExtCategory, m, n):
    return cat.checked(cat.add(m, n))


def ext_scale(cat: ExtCategory, lam, m):
    """Scalar action ``lam (a, c) = (lam a, lam c)``; Hom instance only."""
    return cat.checked(cat.scale(lam, m))


def conflation_in_XE(cat: ExtCategory, f: ExtMorphism, g: ExtMorphism, witnesses=None):
    """Whether ``x -(a,c)-> y -(b,d)-> z`` lies in ``X_E``.

    Both underlying sequences must be split exact. Returns ``True``, ``False``
    or :data:`UNKNOWN`; ``witnesses`` may hold
    ``((r_a, s_b), (r_c, s_d))`` for categories that cannot solve.
    """
    try:
        if not cat.obj_eq(f.target, g.source):
            return False
        if not (ext_morphism_check(cat.E, f) and ext_morphism_check(cat.E, g)):
            return False
    except DomainMismatchError:
        return False
    (ra, sb), (rc, sd) = witnesses or ((None, None), (None, None))
    results = [
        split_conflation_membership(cat.base, ConflationTriple(f.a, g.a, ra, sb)),
        split_conflation_membership(cat.base, ConflationTriple(f.c, g.c, rc, sd)),
    ]
    if any(r is False for r in results):
        return False
    if any(r is UNKNOWN for r in results):
        return UNKNOWN
    return True


# ------------------------------------------- splitting idempotents in Ext


def split_ext_idempotent(cat: ExtCategory, x: ExtensionObject, e_A, e_C, w_A: SplitWitness, w_C: SplitWitness):
    """Split the idempotent ``(e_A, e_C)`` of ``x`` through ``r_E v^E x``.

    With ``e_A = s r`` and ``e_C = v u`` the result is ``(y, (r, u), (s, v))``
    where ``(s, v)(r, u) = (e_A, e_C)`` and ``(r, u)(s, v) = id_y``.
    """
    B, E = cat.base, cat.E
    e = ExtMorphism(x, x, e_A, e_C)
    try:
        if not ext_morphism_check(E, e):
            raise PreconditionError("(e_A, e_C) is not an endomorphism of the extension")
    except DomainMismatchError as exc:
        raise PreconditionError(str(exc)) from exc
    if not verify_split_witness(B, e_A, w_A):
        raise PreconditionError("w_A does not split e_A")
    if not verify_split_witness(B, e_C, w_C):
        raise PreconditionError("w_C does not split e_C")
    r, s = w_A.r, w_A.s
    u, v = w_C.r, w_C.s
    y = ExtensionObject(B.cod(r), B.cod(u), E.act(v, r, x.alpha))
    ru = cat.checked(ExtMorphism(x, y, r, u))
    sv = cat.checked(ExtMorphism(y, x, s, v))
    if not cat.eq(cat.compose(sv, ru), e) or not cat.eq(cat.compose(ru, sv), cat.identity(y)):
        raise InternalConsistencyError("split composites failed although witnesses verified")
    return y, ru, sv


def ext_split_from_morphisms(cat: ExtCategory, ru: ExtMorphism, sv: ExtMorphism):
    """Component splittings ``((r, s), (u, v))`` of a splitting in ``Ext``."""
    return SplitWitness(ru.a, sv.a), SplitWitness(ru.c, sv.c)


# ------------------------------------------------------ cokernels in Ext


def ext_cokernel_of_section(cat: ExtCategory, m: ExtMorphism, retractions, probes=()):
    """Componentwise cokernel ``(b, d): y -> z`` of a section ``m = (a, c)``.

    ``retractions = (r_a, r_c)``. The base category must provide
    ``split_cokernel(a, r) -> (b, t)`` with ``b t = id``, ``r t = 0`` and
    ``a r + t b = id``. Then ``z = t_d^E b_E y``. Each probe ``(x, w)`` is a
    morphism out of ``y`` killing ``m``; it must factor as ``(x t_b, w t_d)``.
    """
    B, E = cat.base, cat.E
    ra, rc = retractions
    if not (B.eq(B.compose(ra, m.a), B.identity(B.dom(m.a))) and B.eq(B.compose(rc, m.c), B.identity(B.dom(m.c)))):
        raise PreconditionError("supplied retractions do not verify")
    b, tb = B.split_cokernel(m.a, ra)
    d, td = B.split_cokernel(m.c, rc)
    y = m.target
    z = ExtensionObject(B.cod(b), B.cod(d), E.act(td, b, y.alpha))
    coker = cat.checked(ExtMorphism(y, z, b, d))
    if not cat.eq(cat.compose(coker, m), cat.zero(m.source, z)):
        raise InternalConsistencyError("cokernel does not annihilate the section")
    for p in probes:
        if not cat.eq(cat.compose(p, m), cat.zero(m.source, p.target)):
            raise PreconditionError("probe does not vanish on the section")
        fac = ExtMorphism(z, p.target, B.compose(p.a, tb), B.compose(p.c, td))
        if not ext_morphism_check(E, fac) or not cat.eq(cat.compose(fac, coker), p):
            raise InternalConsistencyError("cokernel universal property failed on a probe")
    return coker


# -------------------------------------------------- completed bifunctors


@dataclass(frozen=True)
class TildeExtension:
    """An element ``(e_A, alpha, e_C)`` of ``E~((C, e_C), (A, e_A))``."""

    e_A: Any
    alpha: Any
    e_C: Any

    def to_json(self):
        return {"e_A": to_jsonable(self.e_A), "alpha": to_jsonable(self.alpha), "e_C": to_jsonable(self.e_C)}


class TildeBifunctor(Bifunctor):
    """``E~`` on the idempotent completion of ``E.category``."""

    def __init__(self, E: Bifunctor, completion: IdempotentCompletion | None = None):
        self.inner = E
        self.category = completion or IdempotentCompletion(E.category)
        self.name = f"{E.name}~"

    def __eq__(self, other):
        return type(self) is type(other) and self.inner == other.inner and self.category == other.category

    def __hash__(self):
        return hash((type(self).__name__, self.inner))

    def is_valid(self, e_A, alpha, e_C) -> bool:
        E = self.inner
        try:
            return E.eq(E.act_left(e_A, alpha), alpha) and E.eq(E.act_right(e_C, alpha), alpha)
        except DomainMismatchError:
            return False

    def validate(self, e_A, alpha, e_C) -> TildeExtension:
        if not self.is_valid(e_A, alpha, e_C):
            raise InvalidTildeExtensionError("need (e_A)_E alpha = alpha = (e_C)^E alpha")
        return TildeExtension(e_A, alpha, e_C)

    def include(self, alpha) -> TildeExtension:
        """``Gamma_C``: ``alpha -> (id_A, alpha, id_C)``."""
        C, A = self.inner.endpoints(alpha)
        B = self.inner.category
        return TildeExtension(B.identity(A), alpha, B.identity(C))

    def endpoints(self, x):
        B = self.inner.category
        return CompletedObject(B.dom(x.e_C), x.e_C), CompletedObject(B.dom(x.e_A), x.e_A)

    def contains(self, C, A, x) -> bool:
        if not isinstance(x, TildeExtension):
            return False
        return super().contains(C, A, x) and self.is_valid(x.e_A, x.alpha, x.e_C)

    def zero(self, C, A):
        return TildeExtension(A.e, self.inner.zero(C.X, A.X), C.e)

    def _same_ends(self, x, y):
        B = self.inner.category
        if not (B.eq(x.e_A, y.e_A) and B.eq(x.e_C, y.e_C)):
            raise DomainMismatchError("tilde extensions live over different idempotents")

    def add(self, x, y):
        self._same_ends(x, y)
        return TildeExtension(x.e_A, self.inner.add(x.alpha, y.alpha), x.e_C)

    def neg(self, x):
        return TildeExtension(x.e_A, self.inner.neg(x.alpha), x.e_C)

    def scale(self, lam, x):
        return TildeExtension(x.e_A, self.inner.scale(lam, x.alpha), x.e_C)

    def eq(self, x, y):
        B = self.inner.category
        return B.eq(x.e_A, y.e_A) and self.inner.eq(x.alpha, y.alpha) and B.eq(x.e_C, y.e_C)

    def act_left(self, a: CompletedMorphism, x):
        if not self.inner.category.eq(a.e_source, x.e_A):
            raise DomainMismatchError("left action: morphism does not start at (A, e_A)")
        out = TildeExtension(a.e_target, self.inner.act_left(a.f, x.alpha), x.e_C)
        return self._checked(out)

    def act_right(self, d: CompletedMorphism, x):
        if not self.inner.category.eq(d.e_target, x.e_C):
            raise DomainMismatchError("right action: morphism does not end at (C, e_C)")
        out = TildeExtension(x.e_A, self.inner.act_right(d.f, x.alpha), d.e_source)
        return self._checked(out)

    def _checked(self, x):
        if not self.is_valid(x.e_A, x.alpha, x.e_C):
            raise InternalConsistencyError("action left the tilde-extension invariant")
        return x


def tilde_bifunctor(E: Bifunctor, completion=None) -> TildeBifunctor:
    return TildeBifunctor(E, completion)


class HatBifunctor(TildeBifunctor):
    """``E^``: the restriction of ``E~`` to the weak idempotent completion."""

    def __init__(self, E: Bifunctor, wic: WeakIdempotentCompletion | None = None):
        super().__init__(E, wic or WeakIdempotentCompletion(E.category))
        self.name = f"{E.name}^"

    def member(self, P) -> WicObject:
        """``P`` as a verified :class:`WicObject`, else :class:`MembershipError`."""
        got = wic_membership(self.inner.category, P)
        if got is UNKNOWN:
            raise MembershipError(f"cannot establish that id - e splits for {P!r}")
        return got

    def endpoints(self, x):
        C, A = super().endpoints(x)
        return self.member(C), self.member(A)

    def contains(self, C, A, x) -> bool:
        for P in (C, A):
            if not (isinstance(P, WicObject) and self.category.is_member(P)):
                self.member(P)
        return super().contains(C, A, x)

    def zero(self, C, A):
        return super().zero(self.member(C), self.member(A))


def hat_bifunctor(E: Bifunctor, wic=None) -> HatBifunctor:
    return HatBifunctor(E, wic)


def hat_object(H: HatBifunctor, A, C, x) -> ExtensionObject:
    """An object of ``Ext_{E^}(C^)`` with both endpoints checked for membership."""
    A, C = H.member(A), H.member(C)
    if not (H.category.base.eq(A.e, x.e_A) and H.category.base.eq(C.e, x.e_C)):
        raise DomainMismatchError("endpoint idempotents differ from those of the element")
    if not H.is_valid(x.e_A, x.alpha, x.e_C):
        raise InvalidTildeExtensionError("need (e_A)_E alpha = alpha = (e_C)^E alpha")
    return ExtensionObject(A, C, x)


def tilde_object(T: TildeBifunctor, x: TildeExtension) -> ExtensionObject:
    """The object of ``Ext_{E~}(C~)`` determined by a valid element."""
    T.validate(x.e_A, x.alpha, x.e_C)
    C, A = T.endpoints(x)
    return ExtensionObject(A, C, x)


# ------------------------------------------------------ hom dimensions


def hom_ext_system(x: ExtensionObject, y: ExtensionObject):
    """Unknowns and equations of ``a x - y c = 0`` for the Hom instance over matrices."""
    from .linalg import Term

    unknowns = {"a": (y.A, x.A), "c": (y.C, x.C)}
    return unknowns, [[Term("a", None, x.alpha), Term("c", -y.alpha, None)]]


def hom_ext_basis(ring, x, y):
    from .linalg import solve_hom_system

    unknowns, eqs = hom_ext_system(x, y)
    return unknowns, solve_hom_system(ring, unknowns, eqs)


def hom_ext_dimension(ring, x: ExtensionObject, y: ExtensionObject) -> int:
    """Dimension of ``Ext(x, y)`` for the Hom bifunctor on ``Mat(ring)``."""
    ring.require_field("hom-space dimension")
    return hom_ext_basis(ring, x, y)[1][0]


def ext_is_idempotent(cat: ExtCategory, m: ExtMorphism) -> bool:
    if not cat.obj_eq(m.source, m.target):
        raise DomainMismatchError("idempotent test needs an endomorphism")
    return cat.eq(cat.compose(m, m), m)


__all__ = [
    "Bifunctor",
    "HomBifunctor",
    "hom_bifunctor",
    "ExtensionObject",
    "ExtMorphism",
    "ExtCategory",
    "ext_morphism_check",
    "ext_compose",
    "ext_add",
    "ext_scale",
    "conflation_in_XE",
    "split_ext_idempotent",
    "ext_split_from_morphisms",
    "ext_cokernel_of_section",
    "TildeExtension",
    "TildeBifunctor",
    "tilde_bifunctor",
    "HatBifunctor",
    "hat_bifunctor",
    "hat_object",
    "tilde_object",
    "hom_ext_dimension",
    "hom_ext_basis",
    "ext_is_idempotent",
    "split_exact_witness",
]
