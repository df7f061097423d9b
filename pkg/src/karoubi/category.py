"""Executable categories, functors and natural transformations.

Categories are *local*: nothing enumerates objects. A category instance only
knows how to compose, take identities and compare morphisms, and every law
is checked pointwise on seeded samples.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from .errors import DomainMismatchError, GenerationError, PreconditionError
from .serialize import to_jsonable


def case_rng(seed: int, *labels) -> random.Random:
    """Independent, replayable RNG for one sampled case."""
    return random.Random("/".join(str(x) for x in (seed, *labels)))


class Category:
    """Composition, identities and equality for one category.

    ``can_solve`` says whether :meth:`find_retraction` / :meth:`find_section`
    decide existence; ``can_split`` whether :meth:`split_idempotent` does.
    When they are false the methods may only return witnesses they already
    know about, and callers must treat a ``None`` as "unknown".
    """

    name = "category"
    can_solve = False
    can_split = False

    def dom(self, f):
        raise NotImplementedError

    def cod(self, f):
        raise NotImplementedError

    def compose(self, g, f):
        """``g o f``; raises :class:`DomainMismatchError` unless cod f = dom g."""
        raise NotImplementedError

    def identity(self, X):
        raise NotImplementedError

    def eq(self, f, g) -> bool:
        return f == g

    def obj_eq(self, X, Y) -> bool:
        return X == Y

    def find_retraction(self, f):
        """A morphism ``r`` with ``r o f = id``, or ``None``."""
        return self.solve_left(f, self.identity(self.dom(f)))

    def find_section(self, g):
        """A morphism ``s`` with ``g o s = id``, or ``None``."""
        return self.solve_right(g, self.identity(self.cod(g)))

    def split_idempotent(self, e) -> "SplitWitness | None":
        return None

    def solve_left(self, f, y):
        """Some ``x`` with ``x o f = y``, or ``None`` (see ``can_solve``)."""
        return None

    def solve_right(self, g, y):
        """Some ``x`` with ``g o x = y``, or ``None`` (see ``can_solve``)."""
        return None

    def check_composable(self, g, f) -> None:
        if not self.obj_eq(self.cod(f), self.dom(g)):
            raise DomainMismatchError(
                f"cannot compose: codomain {self.cod(f)!r} != domain {self.dom(g)!r}"
            )

    def compose_all(self, *fs):
        """``compose_all(h, g, f) == h o g o f``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def is_endo(self, e) -> bool:
        return self.obj_eq(self.dom(e), self.cod(e))


@dataclass(frozen=True)
class Biproduct:
    obj: Any
    i1: Any
    i2: Any
    p1: Any
    p2: Any


class AdditiveCategory(Category):
    """A category with a zero object, abelian hom-groups and biproducts."""

    def zero_object(self):
        raise NotImplementedError

    def add(self, f, g):
        raise NotImplementedError

    def neg(self, f):
        raise NotImplementedError

    def zero(self, X, Y):
        """The zero morphism ``X -> Y``."""
        raise NotImplementedError

    def biproduct(self, X, Y) -> Biproduct:
        raise NotImplementedError

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    def check_parallel(self, f, g) -> None:
        if not (self.obj_eq(self.dom(f), self.dom(g)) and self.obj_eq(self.cod(f), self.cod(g))):
            raise DomainMismatchError("morphisms are not parallel")


@dataclass(frozen=True)
class SplitWitness:
    """``r: X -> Y`` and ``s: Y -> X`` splitting an idempotent ``e = s o r``."""

    r: Any
    s: Any

    def to_json(self):
        return {"r": to_jsonable(self.r), "s": to_jsonable(self.s)}


def is_idempotent(cat: Category, e) -> bool:
    if not cat.is_endo(e):
        raise DomainMismatchError("idempotent test needs an endomorphism")
    return cat.eq(cat.compose(e, e), e)


def verify_split_witness(cat: Category, e, w: SplitWitness) -> bool:
    """True iff ``s o r = e`` and ``r o s = id``."""
    X = cat.dom(e)
    if not cat.is_endo(e):
        raise DomainMismatchError("split witness needs an endomorphism")
    if not (cat.obj_eq(cat.dom(w.r), X) and cat.obj_eq(cat.cod(w.s), X)):
        raise DomainMismatchError("witness does not start and end at the object of e")
    if not (cat.obj_eq(cat.cod(w.r), cat.dom(w.s))):
        raise DomainMismatchError("witness r and s do not meet in one object")
    Y = cat.cod(w.r)
    return cat.eq(cat.compose(w.s, w.r), e) and cat.eq(cat.compose(w.r, w.s), cat.identity(Y))


def direct_sum(cat: AdditiveCategory, X, Y) -> Biproduct:
    return cat.biproduct(X, Y)


def biproduct_identities_hold(cat: AdditiveCategory, X, Y) -> bool:
    b = cat.biproduct(X, Y)
    c, eq = cat.compose, cat.eq
    return (
        eq(c(b.p1, b.i1), cat.identity(X))
        and eq(c(b.p2, b.i2), cat.identity(Y))
        and eq(c(b.p2, b.i1), cat.zero(X, Y))
        and eq(c(b.p1, b.i2), cat.zero(Y, X))
        and eq(cat.add(c(b.i1, b.p1), c(b.i2, b.p2)), cat.identity(b.obj))
    )


# ---------------------------------------------------------------- functors


@dataclass(frozen=True, eq=False)
class FunctorValue:
    """An executable functor: an object map and a morphism map."""

    source: Category
    target: Category
    on_objects: Callable
    on_morphisms: Callable
    name: str = "F"

    def obj(self, X):
        return self.on_objects(X)

    def mor(self, f):
        return self.on_morphisms(f)

    def __repr__(self):
        return f"<functor {self.name}>"


@dataclass(frozen=True, eq=False)
class NatTransValue:
    """A natural transformation ``source => target`` given by its components."""

    source: FunctorValue
    target: FunctorValue
    component: Callable
    name: str = "nt"

    def at(self, X):
        return self.component(X)

    def __repr__(self):
        return f"<nat-trans {self.name}: {self.source.name} => {self.target.name}>"


def identity_functor(cat: Category) -> FunctorValue:
    return FunctorValue(cat, cat, lambda X: X, lambda f: f, name=f"id[{cat.name}]")


def compose_functors(L: FunctorValue, F: FunctorValue) -> FunctorValue:
    """``L o F``."""
    return FunctorValue(
        F.source,
        L.target,
        lambda X: L.obj(F.obj(X)),
        lambda f: L.mor(F.mor(f)),
        name=f"{L.name}.{F.name}",
    )


def identity_nattrans(F: FunctorValue) -> NatTransValue:
    return NatTransValue(F, F, lambda X: F.target.identity(F.obj(X)), name=f"id[{F.name}]")


def functor_equal_at(F: FunctorValue, G: FunctorValue, objects=(), morphisms=()):
    """First object or morphism where ``F`` and ``G`` differ, or ``None``."""
    for X in objects:
        if not F.target.obj_eq(F.obj(X), G.obj(X)):
            return ("object", X)
    for f in morphisms:
        if not F.target.eq(F.mor(f), G.mor(f)):
            return ("morphism", f)
    return None


# ---------------------------------------------------------------- law checks


@dataclass
class LawReport:
    """Outcome of sampling one law; failures carry a replayable counterexample."""

    law: str
    cases: int
    passed: bool
    counterexample: Any = None
    seed: int | None = None

    def to_json(self):
        return {
            "law": self.law,
            "cases": self.cases,
            "pass": self.passed,
            "counterexample": to_jsonable(self.counterexample),
            "seed": self.seed,
        }


def _additive_case(cat: AdditiveCategory, sampler, rng):
    X, Y, Z, W = (sampler.object(rng) for _ in range(4))
    f, f2 = sampler.morphism(rng, X, Y), sampler.morphism(rng, X, Y)
    g, g2 = sampler.morphism(rng, Y, Z), sampler.morphism(rng, Y, Z)
    h = sampler.morphism(rng, Z, W)
    for m, (s, t) in ((f, (X, Y)), (f2, (X, Y)), (g, (Y, Z)), (g2, (Y, Z)), (h, (Z, W))):
        if not (cat.obj_eq(cat.dom(m), s) and cat.obj_eq(cat.cod(m), t)):
            raise GenerationError(f"sampler produced a morphism with wrong endpoints: {m!r}")
    c, eq, add = cat.compose, cat.eq, cat.add
    checks = {
        "associativity": lambda: eq(c(h, c(g, f)), c(c(h, g), f)),
        "left-unit": lambda: eq(c(cat.identity(Y), f), f),
        "right-unit": lambda: eq(c(f, cat.identity(X)), f),
        "addition-commutative": lambda: eq(add(f, f2), add(f2, f)),
        "addition-associative": lambda: eq(add(add(f, f2), f), add(f, add(f2, f))),
        "zero-unit": lambda: eq(add(f, cat.zero(X, Y)), f),
        "negation": lambda: eq(add(f, cat.neg(f)), cat.zero(X, Y)),
        "left-bilinear": lambda: eq(c(add(g, g2), f), add(c(g, f), c(g2, f))),
        "right-bilinear": lambda: eq(c(g, add(f, f2)), add(c(g, f), c(g, f2))),
        "biproduct": lambda: biproduct_identities_hold(cat, X, Y),
    }
    for name, check in checks.items():
        try:
            ok = check()
        except Exception as exc:  # noqa: BLE001 - a crash is a counterexample too
            ok, name = False, f"{name} ({type(exc).__name__}: {exc})"
        if not ok:
            return {"law": name, "objects": [X, Y, Z, W], "f": f, "f2": f2, "g": g, "g2": g2, "h": h}
    return None


def check_additive_laws(cat: AdditiveCategory, sampler, seed: int, size: int, law: str = "additive-laws") -> LawReport:
    """Sample ``size`` configurations and check the additive-category axioms.

    ``sampler`` must provide ``object(rng)`` and ``morphism(rng, X, Y)``.
    """
    if size < 0:
        raise PreconditionError("sample size must be non-negative")
    for i in range(size):
        rng = case_rng(seed, law, cat.name, i)
        bad = _additive_case(cat, sampler, rng)
        if bad is not None:
            bad["case"] = i
            bad["replay"] = {"seed": seed, "law": law, "category": cat.name, "case": i}
            return LawReport(law, i + 1, False, bad, seed)
    return LawReport(law, size, True, None, seed)
