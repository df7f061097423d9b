"""Pairs ``(F, Gamma)`` and their natural transformations at the ``(C, E)`` level.

An :class:`ExFunctor` couples an additive functor ``F: C -> D`` with a family
``Gamma: E(C, A) -> E'(FC, FA)``. The realisation clause of an exangulated
functor has no counterpart here: only the data and its naturality are kept.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .category import FunctorValue, NatTransValue, compose_functors, identity_functor, identity_nattrans
from .completion import complete_functor, complete_nattrans
from .errors import DomainMismatchError
from .extensions import Bifunctor, ExtCategory, ExtensionObject, ExtMorphism, TildeBifunctor, TildeExtension
from .serialize import to_jsonable


@dataclass
class SquareReport:
    """Pointwise comparison of two composites over a finite sample."""

    square: str
    cases: int
    passed: bool
    equal_on_objects: bool = True
    equal_on_morphisms: bool = True
    counterexample: Any = None
    seed: int | None = None

    def to_json(self):
        return {
            "square": self.square,
            "cases": self.cases,
            "pass": self.passed,
            "equal_on_objects": self.equal_on_objects,
            "equal_on_morphisms": self.equal_on_morphisms,
            "counterexample": to_jsonable(self.counterexample),
            "seed": self.seed,
        }


def _attempt(fn):
    try:
        return fn(), None
    except Exception as exc:  # noqa: BLE001 - reported as a discrepancy
        return None, f"{type(exc).__name__}: {exc}"


def compare_functors(square, P: FunctorValue, Q: FunctorValue, objects=(), morphisms=(), seed=None) -> SquareReport:
    """First sampled object or morphism on which ``P`` and ``Q`` disagree."""
    T = P.target
    objects, morphisms = list(objects), list(morphisms)
    rep = SquareReport(square, max(len(objects), len(morphisms)), True, seed=seed)
    for i, X in enumerate(objects):
        got, err = _attempt(lambda: (P.obj(X), Q.obj(X)))
        lhs, rhs = got or (None, None)
        if err is None and T.obj_eq(lhs, rhs):
            continue
        rep.passed = rep.equal_on_objects = False
        rep.counterexample = {"kind": "object", "index": i, "input": X, "left": lhs, "right": rhs, "error": err}
        return rep
    for i, f in enumerate(morphisms):
        got, err = _attempt(lambda: (P.mor(f), Q.mor(f)))
        lhs, rhs = got or (None, None)
        if err is None and T.eq(lhs, rhs):
            continue
        rep.passed = rep.equal_on_morphisms = False
        rep.counterexample = {"kind": "morphism", "index": i, "input": f, "left": lhs, "right": rhs, "error": err}
        return rep
    return rep


def compare_nattrans(square, a: NatTransValue, b: NatTransValue, objects=(), seed=None) -> SquareReport:
    T = a.source.target
    objects = list(objects)
    rep = SquareReport(square, len(objects), True, seed=seed)
    for i, X in enumerate(objects):
        got, err = _attempt(lambda: (a.at(X), b.at(X)))
        if err is None and T.eq(*got):
            continue
        lhs, rhs = got if got else (None, None)
        rep.passed = rep.equal_on_objects = False
        rep.counterexample = {"kind": "component", "index": i, "input": X, "left": lhs, "right": rhs, "error": err}
        return rep
    return rep


# ------------------------------------------------------ 1-cells and 2-cells


@dataclass(frozen=True, eq=False)
class ExFunctor:
    F: FunctorValue
    gamma: Callable
    E_source: Bifunctor
    E_target: Bifunctor
    name: str = "(F,Gamma)"

    def __repr__(self):
        return f"<ex-functor {self.name}>"


@dataclass(frozen=True, eq=False)
class ExNatTrans:
    nt: NatTransValue
    source: ExFunctor
    target: ExFunctor
    name: str = "nt"

    def at(self, X):
        return self.nt.at(X)

    def __repr__(self):
        return f"<ex-nat-trans {self.name}: {self.source.name} => {self.target.name}>"


def _same(F, G) -> bool:
    return F is G or F.name == G.name


def identity_exfunctor(E: Bifunctor) -> ExFunctor:
    return ExFunctor(identity_functor(E.category), lambda x: x, E, E, name=f"id[{E.name}]")


def compose_exfunctors(L: ExFunctor, F: ExFunctor) -> ExFunctor:
    """``(LF, Phi_{F x F} o Gamma)``."""
    if not _same(F.E_target, L.E_source):
        raise DomainMismatchError(f"cannot compose {L.name} after {F.name}")
    return ExFunctor(
        compose_functors(L.F, F.F),
        lambda x: L.gamma(F.gamma(x)),
        F.E_source,
        L.E_target,
        name=f"{L.name}.{F.name}",
    )


def vertical_compose(b2: NatTransValue, b1: NatTransValue) -> NatTransValue:
    """``(b2 o_v b1)_X = b2_X b1_X``."""
    if not _same(b1.target, b2.source):
        raise DomainMismatchError(f"vertical composite {b2.name} o {b1.name} does not match")
    D = b1.source.target
    return NatTransValue(b1.source, b2.target, lambda X: D.compose(b2.at(X), b1.at(X)), name=f"{b2.name}*{b1.name}")


def horizontal_compose(t: NatTransValue, b: NatTransValue) -> NatTransValue:
    """``(t o_h b)_X = t_{GX} L(b_X)`` for ``b: F => G`` and ``t: L => M``."""
    L, G = t.source, b.target
    if L.source is not G.target and L.source != G.target:
        raise DomainMismatchError(f"horizontal composite {t.name} o {b.name} does not match")
    E = L.target
    return NatTransValue(
        compose_functors(L, b.source),
        compose_functors(t.target, G),
        lambda X: E.compose(t.at(G.obj(X)), L.mor(b.at(X))),
        name=f"{t.name}#{b.name}",
    )


def identity_exnattrans(F: ExFunctor) -> ExNatTrans:
    return ExNatTrans(identity_nattrans(F.F), F, F, name=f"id[{F.name}]")


def vertical_compose_ex(b2: ExNatTrans, b1: ExNatTrans) -> ExNatTrans:
    return ExNatTrans(vertical_compose(b2.nt, b1.nt), b1.source, b2.target, name=f"{b2.name}*{b1.name}")


def horizontal_compose_ex(t: ExNatTrans, b: ExNatTrans) -> ExNatTrans:
    nt = horizontal_compose(t.nt, b.nt)
    src = compose_exfunctors(t.source, b.source)
    tgt = compose_exfunctors(t.target, b.target)
    return ExNatTrans(
        NatTransValue(src.F, tgt.F, nt.component, name=nt.name), src, tgt, name=f"{t.name}#{b.name}"
    )


def exnat_sides(b: ExNatTrans, x):
    """``((b_A)_F Gamma(x), (b_C)^F Lambda(x))`` for ``x`` in ``E(C, A)``."""
    Ft = b.source.E_target
    C, A = b.source.E_source.endpoints(x)
    return Ft.act_left(b.at(A), b.source.gamma(x)), Ft.act_right(b.at(C), b.target.gamma(x))


def check_exnattrans(b: ExNatTrans, samples, seed=None, square=None) -> SquareReport:
    """Sampled check of ``(b_A)_F Gamma(x) = (b_C)^F Lambda(x)``."""
    samples = list(samples)
    rep = SquareReport(square or f"exnat[{b.name}]", len(samples), True, seed=seed)
    Ft = b.source.E_target
    for i, x in enumerate(samples):
        got, err = _attempt(lambda: exnat_sides(b, x))
        if err is None and Ft.eq(*got):
            continue
        lhs, rhs = got if got else (None, None)
        rep.passed = rep.equal_on_objects = False
        rep.counterexample = {"index": i, "input": x, "left": lhs, "right": rhs, "error": err}
        return rep
    return rep


def check_exfunctor(F: ExFunctor, samples, seed=None, square=None) -> SquareReport:
    """Naturality and additivity of ``Gamma`` on samples ``(x, x2, a, d)``.

    ``x, x2`` lie in one ``E(C, A)``, ``a`` starts at ``A`` and ``d`` ends at ``C``.
    """
    samples = list(samples)
    rep = SquareReport(square or f"exfunctor[{F.name}]", len(samples), True, seed=seed)
    E, Ft, G, Fm = F.E_source, F.E_target, F.gamma, F.F.mor
    for i, (x, x2, a, d) in enumerate(samples):
        checks = (
            ("additive", lambda: Ft.eq(G(E.add(x, x2)), Ft.add(G(x), G(x2)))),
            ("left-natural", lambda: Ft.eq(G(E.act_left(a, x)), Ft.act_left(Fm(a), G(x)))),
            ("right-natural", lambda: Ft.eq(G(E.act_right(d, x)), Ft.act_right(Fm(d), G(x)))),
        )
        for name, chk in checks:
            ok, err = _attempt(chk)
            if err is None and ok:
                continue
            rep.passed = rep.equal_on_morphisms = False
            rep.counterexample = {"index": i, "law": name, "x": x, "x2": x2, "a": a, "d": d, "error": err}
            return rep
    return rep


# ------------------------------------------------------------ completions


def complete_exfunctor(F: ExFunctor, source: TildeBifunctor | None = None, target: TildeBifunctor | None = None,
                       gamma_override: Callable | None = None) -> ExFunctor:
    """``(F~, Gamma~)`` with ``Gamma~(e_A, x, e_C) = (F e_A, Gamma(x), F e_C)``.

    ``gamma_override`` replaces ``Gamma~`` wholesale; it exists so that a broken
    completion can be fed to the square checks.
    """
    S = source or TildeBifunctor(F.E_source)
    T = target or TildeBifunctor(F.E_target)
    Ft = complete_functor(F.F, S.category, T.category)
    Fm = F.F.mor

    def gamma(t: TildeExtension):
        return T.validate(Fm(t.e_A), F.gamma(t.alpha), Fm(t.e_C))

    return ExFunctor(Ft, gamma_override or gamma, S, T, name=f"{F.name}~")


def complete_exnattrans(b: ExNatTrans, source: ExFunctor | None = None, target: ExFunctor | None = None) -> ExNatTrans:
    Fs = source or complete_exfunctor(b.source)
    Gs = target or complete_exfunctor(b.target, Fs.E_source, Fs.E_target)
    return ExNatTrans(complete_nattrans(b.nt, Fs.F, Gs.F), Fs, Gs, name=f"{b.name}~")


# ------------------------------------------------------------------ the star


def davidsstar(F: ExFunctor, source: ExtCategory | None = None, target: ExtCategory | None = None) -> FunctorValue:
    """``E_(F,Gamma)``: ``x -> Gamma(x)`` and ``(a, c) -> (Fa, Fc)``."""
    S = source or ExtCategory(F.E_source)
    T = target or ExtCategory(F.E_target)
    Fo, Fm = F.F.obj, F.F.mor

    def on_obj(x: ExtensionObject):
        return ExtensionObject(Fo(x.A), Fo(x.C), F.gamma(x.alpha))

    def on_mor(m: ExtMorphism):
        return ExtMorphism(on_obj(m.source), on_obj(m.target), Fm(m.a), Fm(m.c))

    return FunctorValue(S, T, on_obj, on_mor, name=f"E{F.name}")


def davidsstar_2(b: ExNatTrans, source: FunctorValue | None = None, target: FunctorValue | None = None) -> NatTransValue:
    """``<b>_x = (b_A, b_C)``, an Ext morphism ``Gamma(x) -> Lambda(x)``."""
    P = source or davidsstar(b.source)
    Q = target or davidsstar(b.target, P.source, P.target)
    return NatTransValue(
        P, Q, lambda x: ExtMorphism(P.obj(x), Q.obj(x), b.at(x.A), b.at(x.C)), name=f"<{b.name}>"
    )
