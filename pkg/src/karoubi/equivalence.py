"""The equivalence between ``Ext_{E~}(C~)`` and the completion of ``Ext_E(C)``.

``shin`` repackages ``(e_A, x, e_C)`` as the completed object ``(x, (e_A, e_C))``;
``tsadi`` goes back via ``(e_A, (e_A)_E x, e_C)``. ``tsadi . shin`` is the
identity on the nose, and ``mem`` is an isomorphism ``Id => shin . tsadi``.
The weak-completion variants, the naturality squares and the rectangular
matrix example live here as well.
"""
from __future__ import annotations

from .category import FunctorValue, NatTransValue, SplitWitness, identity_nattrans
from .completion import (
    CompletedMorphism,
    CompletedObject,
    UNKNOWN,
    ConflationTriple,
    IdempotentCompletion,
    SummandWitness,
    WeakIdempotentCompletion,
    WicObject,
    complete_functor,
    complete_nattrans,
    include_into_completion,
    include_into_wic,
    split_exact_witness,
    verify_summand_witness,
    wic_into_completion,
)
from .errors import InternalConsistencyError, PreconditionError
from .exfunctors import (
    ExFunctor,
    ExNatTrans,
    SquareReport,
    compare_functors,
    compare_nattrans,
    complete_exfunctor,
    complete_exnattrans,
    davidsstar,
    davidsstar_2,
    horizontal_compose,
)
from .extensions import (
    ExtCategory,
    ExtensionObject,
    ExtMorphism,
    HatBifunctor,
    HomBifunctor,
    TildeBifunctor,
    TildeExtension,
    conflation_in_XE,
    split_ext_idempotent,
)
from .matrix import MatCategory
from .rect import RectCategory, RectObject


class ExtPair:
    """The categories around one ``(C, E)``: ``Ext_{E~}(C~)``, ``Ext_E(C)`` and its completion."""

    def __init__(self, E, tilde: TildeBifunctor | None = None):
        self.E = E
        self.T = tilde or TildeBifunctor(E)
        self.ext = ExtCategory(E)
        self.ext_tilde = ExtCategory(self.T)
        self.completed_ext = IdempotentCompletion(self.ext)


def _pair(x):
    return x if isinstance(x, ExtPair) else ExtPair(x)


def _base_object(x: ExtensionObject) -> ExtensionObject:
    return ExtensionObject(x.A.X, x.C.X, x.alpha.alpha)


def _shin_obj(P: ExtPair, x: ExtensionObject) -> CompletedObject:
    xx = _base_object(x)
    return CompletedObject(xx, ExtMorphism(xx, xx, x.alpha.e_A, x.alpha.e_C))


def _shin_mor(P: ExtPair, m: ExtMorphism) -> CompletedMorphism:
    s, t = _shin_obj(P, m.source), _shin_obj(P, m.target)
    return CompletedMorphism(t.e, ExtMorphism(s.X, t.X, m.a.f, m.c.f), s.e)


def shin(pair) -> FunctorValue:
    """``(e_A, x, e_C) -> (x, (e_A, e_C))`` and ``(a~, c~) -> ((e_B, e_D), (a, c), (e_A, e_C))``."""
    P = _pair(pair)
    return FunctorValue(P.ext_tilde, P.completed_ext, lambda x: _shin_obj(P, x), lambda m: _shin_mor(P, m), name="Shin")


def _tsadi_obj(P: ExtPair, X: CompletedObject, check=True) -> ExtensionObject:
    if check and not P.completed_ext.is_valid_object(X):
        raise PreconditionError("not an object of the completed extension category")
    x, e = X.X, X.e
    return ExtensionObject(
        CompletedObject(x.A, e.a),
        CompletedObject(x.C, e.c),
        TildeExtension(e.a, P.E.act_left(e.a, x.alpha), e.c),
    )


def _tsadi_mor(P: ExtPair, m: CompletedMorphism) -> ExtMorphism:
    C = P.completed_ext
    s, t = _tsadi_obj(P, C.dom(m)), _tsadi_obj(P, C.cod(m))
    return ExtMorphism(s, t, CompletedMorphism(m.e_target.a, m.f.a, m.e_source.a),
                       CompletedMorphism(m.e_target.c, m.f.c, m.e_source.c))


def tsadi(pair) -> FunctorValue:
    """``(x, (e_A, e_C)) -> (e_A, (e_A)_E x, e_C)``."""
    P = _pair(pair)
    return FunctorValue(P.completed_ext, P.ext_tilde, lambda X: _tsadi_obj(P, X), lambda m: _tsadi_mor(P, m), name="Tsadi")


def mem_component(pair, X: CompletedObject) -> CompletedMorphism:
    """``((e_A, e_C), (e_A, e_C), (e_A, e_C)): (x, e) -> ((e_A)_E x, e)``."""
    P = _pair(pair)
    x, e = X.X, X.e
    y = ExtensionObject(x.A, x.C, P.E.act_left(e.a, x.alpha))
    return CompletedMorphism(ExtMorphism(y, y, e.a, e.c), ExtMorphism(x, y, e.a, e.c), e)


def mem_inverse(pair, X: CompletedObject) -> CompletedMorphism:
    P = _pair(pair)
    m = mem_component(P, X)
    return CompletedMorphism(m.e_source, ExtMorphism(m.f.target, m.f.source, m.f.a, m.f.c), m.e_target)


def mem(pair) -> NatTransValue:
    P = _pair(pair)
    S, T = shin(P), tsadi(P)
    ident = FunctorValue(P.completed_ext, P.completed_ext, lambda X: X, lambda m: m, name="Id")
    ST = FunctorValue(P.completed_ext, P.completed_ext, lambda X: S.obj(T.obj(X)), lambda m: S.mor(T.mor(m)), name="Shin.Tsadi")
    return NatTransValue(ident, ST, lambda X: mem_component(P, X), name="Mem")


# ---------------------------------------------------------- exactness


def shin_exactness_witness(pair, f: ExtMorphism, g: ExtMorphism):
    """Summand witness exhibiting ``Shin(f), Shin(g)`` inside the image of an ``X_E`` conflation.

    The middle term is first moved to ``(A + E, e_A + e_E)`` by the splitting
    isomorphism built from a retraction of ``a~`` and a section of ``b~``; the
    normalized sequence is then a retract of ``x -> y' -> z`` with identity
    idempotents, via components ``((id, id), (e_A, e_C), (e_A, e_C))``.
    """
    P = _pair(pair)
    Ct, B, ExtE, IC = P.T.category, P.E.category, P.ext, P.completed_ext

    def normalizer(a, b):
        w = split_exact_witness(Ct, ConflationTriple(a, b))
        if w is None or w is UNKNOWN:
            raise PreconditionError("underlying sequence is not split exact in the completion")
        bp = Ct.biproduct(Ct.dom(a), Ct.cod(b))
        phi = Ct.add(Ct.compose(bp.i1, w.r), Ct.compose(bp.i2, b))
        psi = Ct.add(Ct.compose(a, bp.p1), Ct.compose(w.s, bp.p2))
        if not (Ct.eq(Ct.compose(phi, psi), Ct.identity(bp.obj)) and Ct.eq(Ct.compose(psi, phi), Ct.identity(Ct.cod(a)))):
            raise InternalConsistencyError("splitting isomorphism is not invertible")
        return phi, psi, B.biproduct(Ct.dom(a).X, Ct.cod(b).X)

    phiB, psiB, bB = normalizer(f.a, g.a)
    phiD, psiD, bD = normalizer(f.c, g.c)
    x, y, z = f.source, f.target, g.target
    y2 = ExtensionObject(Ct.cod(phiB), Ct.cod(phiD), P.T.act(psiD, phiB, y.alpha))
    norm = ExtMorphism(y, y2, phiB, phiD)
    inv = ExtMorphism(y2, y, psiB, psiD)
    X, Y2, Z = _base_object(x), _base_object(y2), _base_object(z)
    base = ConflationTriple(ExtMorphism(X, Y2, bB.i1, bD.i1), ExtMorphism(Y2, Z, bB.p2, bD.p2))

    def iota(o):
        s = _shin_obj(P, o)
        return CompletedMorphism(ExtE.identity(s.X), s.e, s.e)

    def pi(o):
        s = _shin_obj(P, o)
        return CompletedMorphism(s.e, s.e, ExtE.identity(s.X))

    iota_B = IC.compose(iota(y2), _shin_mor(P, norm))
    pi_B = IC.compose(_shin_mor(P, inv), pi(y2))
    seq = ConflationTriple(_shin_mor(P, f), _shin_mor(P, g))
    return seq, SummandWitness(base, (iota(x), iota_B, iota(z)), (pi(x), pi_B, pi(z)))


def verify_shin_exactness(pair, f: ExtMorphism, g: ExtMorphism) -> bool:
    P = _pair(pair)
    try:
        seq, w = shin_exactness_witness(P, f, g)
    except PreconditionError:
        return False
    return verify_summand_witness(P.completed_ext, seq, w, base_check=lambda s: conflation_in_XE(P.ext, s.f, s.g))


def verify_tsadi_exactness(pair, F: CompletedMorphism, G: CompletedMorphism) -> bool:
    """``Tsadi`` of a completed-Ext conflation has split exact underlying sequences."""
    P = _pair(pair)
    T = tsadi(P)
    return conflation_in_XE(P.ext_tilde, T.mor(F), T.mor(G)) is True


# -------------------------------------------------------- naturality


def naturality_square_check(F: ExFunctor, source: ExtPair, target: ExtPair, objects=(), morphisms=(), seed=None,
                            completed: ExFunctor | None = None) -> SquareReport:
    """``E_(F,Gamma)~ . Shin = Shin . E_(F~,Gamma~)`` on the sampled inputs.

    ``completed`` substitutes the completed ex-functor on the right-hand path.
    """
    Ft = completed or complete_exfunctor(F, source.T, target.T)
    star = davidsstar(F, source.ext, target.ext)
    left_top = complete_functor(star, source.completed_ext, target.completed_ext)
    S_s, S_t = shin(source), shin(target)
    star_t = davidsstar(Ft, source.ext_tilde, target.ext_tilde)
    lhs = FunctorValue(source.ext_tilde, target.completed_ext, lambda x: left_top.obj(S_s.obj(x)),
                       lambda m: left_top.mor(S_s.mor(m)), name="E~.Shin")
    rhs = FunctorValue(source.ext_tilde, target.completed_ext, lambda x: S_t.obj(star_t.obj(x)),
                       lambda m: S_t.mor(star_t.mor(m)), name="Shin.E(F~)")
    return compare_functors("shin-naturality", lhs, rhs, objects, morphisms, seed)


def two_naturality_components(b: ExNatTrans, source: ExtPair, target: ExtPair):
    """Both horizontal composites of the 2-naturality square, plus the closed formula."""
    Fs = complete_exfunctor(b.source, source.T, target.T)
    Gs = complete_exfunctor(b.target, source.T, target.T)
    bt = complete_exnattrans(b, Fs, Gs)
    starF = davidsstar(b.source, source.ext, target.ext)
    starG = davidsstar(b.target, source.ext, target.ext)
    star_b = davidsstar_2(b, starF, starG)
    left = horizontal_compose(
        complete_nattrans(star_b, complete_functor(starF, source.completed_ext, target.completed_ext),
                          complete_functor(starG, source.completed_ext, target.completed_ext)),
        identity_nattrans(shin(source)),
    )
    S_t = shin(target)
    inner = davidsstar_2(bt, davidsstar(Fs, source.ext_tilde, target.ext_tilde),
                         davidsstar(Gs, source.ext_tilde, target.ext_tilde))
    right = horizontal_compose(identity_nattrans(S_t), inner)
    D = b.source.F.target
    Fm, Gm = b.source.F.mor, b.target.F.mor

    def formula(x):
        t = x.alpha
        X = _base_object(x)
        src = ExtensionObject(b.source.F.obj(X.A), b.source.F.obj(X.C), b.source.gamma(t.alpha))
        tgt = ExtensionObject(b.target.F.obj(X.A), b.target.F.obj(X.C), b.target.gamma(t.alpha))
        FeA, FeC, GeA, GeC = Fm(t.e_A), Fm(t.e_C), Gm(t.e_A), Gm(t.e_C)
        return CompletedMorphism(
            ExtMorphism(tgt, tgt, GeA, GeC),
            ExtMorphism(src, tgt, D.compose_all(GeA, b.at(X.A), FeA), D.compose_all(GeC, b.at(X.C), FeC)),
            ExtMorphism(src, src, FeA, FeC),
        )

    closed = NatTransValue(left.source, left.target, formula, name="formula")
    return left, right, closed


def two_naturality_check(b: ExNatTrans, source: ExtPair, target: ExtPair, objects=(), seed=None) -> SquareReport:
    left, right, closed = two_naturality_components(b, source, target)
    objects = list(objects)
    rep = compare_nattrans("two-naturality", left, right, objects, seed)
    if rep.passed:
        rep = compare_nattrans("two-naturality", left, closed, objects, seed)
    return rep


# ------------------------------------------------- weak completion


class WicPair(ExtPair):
    """Adds ``Ext_{E^}(C^)`` and the weak completion of ``Ext_E(C)``."""

    def __init__(self, E):
        super().__init__(E)
        self.H = HatBifunctor(E, WeakIdempotentCompletion(E.category))
        self.ext_hat = ExtCategory(self.H)
        self.wic_ext = WeakIdempotentCompletion(self.ext)


def _shin_prime_obj(P: WicPair, x: ExtensionObject) -> WicObject:
    A, C = P.H.member(x.A), P.H.member(x.C)
    base = P.E.category
    X = _shin_obj(P, x)
    xx = X.X
    comp_A = base.sub(base.identity(xx.A), x.alpha.e_A)
    comp_C = base.sub(base.identity(xx.C), x.alpha.e_C)
    _, ru, sv = split_ext_idempotent(P.ext, xx, comp_A, comp_C, A.witness, C.witness)
    return WicObject(X.X, X.e, SplitWitness(ru, sv))


def _tsadi_prime_obj(P: WicPair, X: WicObject) -> ExtensionObject:
    if not P.wic_ext.is_member(X):
        raise PreconditionError("object carries no verified splitting of id - e")
    plain = _tsadi_obj(P, X)
    wr, ws = X.witness.r, X.witness.s
    return ExtensionObject(
        WicObject(plain.A.X, plain.A.e, SplitWitness(wr.a, ws.a)),
        WicObject(plain.C.X, plain.C.e, SplitWitness(wr.c, ws.c)),
        plain.alpha,
    )


def wic_restrictions(E):
    """``(shin', tsadi')`` between ``Ext_{E^}(C^)`` and the weak completion of ``Ext_E(C)``."""
    P = E if isinstance(E, WicPair) else WicPair(E)

    def shin_mor(m):
        s, t = _shin_prime_obj(P, m.source), _shin_prime_obj(P, m.target)
        return CompletedMorphism(t.e, ExtMorphism(s.X, t.X, m.a.f, m.c.f), s.e)

    def hat_end(X):
        # morphisms do not carry splittings, so endpoints are re-admitted
        plain = _tsadi_obj(P, X)
        return ExtensionObject(P.H.member(plain.A), P.H.member(plain.C), plain.alpha)

    def tsadi_mor(m):
        s, t = hat_end(P.wic_ext.dom(m)), hat_end(P.wic_ext.cod(m))
        return ExtMorphism(s, t, CompletedMorphism(m.e_target.a, m.f.a, m.e_source.a),
                           CompletedMorphism(m.e_target.c, m.f.c, m.e_source.c))

    sp = FunctorValue(P.ext_hat, P.wic_ext, lambda x: _shin_prime_obj(P, x), shin_mor, name="Shin'")
    tp = FunctorValue(P.wic_ext, P.ext_hat, lambda X: _tsadi_prime_obj(P, X), tsadi_mor, name="Tsadi'")
    return sp, tp


def final_diagram_check(E, ext_objects=(), ext_morphisms=(), hat_objects=(), hat_morphisms=(), seed=None):
    """Both squares of the final diagram plus the triangle ``S_I = S_L . S_K`` on ``Ext_E(C)``.

    Returns a list of :class:`SquareReport`.
    """
    P = E if isinstance(E, WicPair) else WicPair(E)
    base = P.E.category
    SK = include_into_wic(base, P.H.category)
    SL = wic_into_completion(P.H.category)
    delta = ExFunctor(SK, P.H.include, P.E, P.H, name="(S_K,Delta)")
    theta = ExFunctor(SL, lambda t: t, P.H, P.T, name="(S_L,Theta)")
    E_SK = davidsstar(delta, P.ext, P.ext_hat)
    E_SL = davidsstar(theta, P.ext_hat, P.ext_tilde)
    sp, _ = wic_restrictions(P)
    S = shin(P)
    SK_ext = include_into_wic(P.ext, P.wic_ext)
    SL_ext = wic_into_completion(P.wic_ext)
    SI_ext = include_into_completion(P.ext, P.completed_ext)

    def comp(name, G, F, src, tgt):
        return FunctorValue(src, tgt, lambda X: G.obj(F.obj(X)), lambda m: G.mor(F.mor(m)), name=name)

    reports = []
    r = compare_functors("final-diagram-left", comp("Shin'.E(S_K)", sp, E_SK, P.ext, P.wic_ext), SK_ext,
                         ext_objects, ext_morphisms, seed)
    reports.append(r)
    r = compare_functors("final-diagram-right", comp("Shin.E(S_L)", S, E_SL, P.ext_hat, P.completed_ext),
                         comp("S_L.Shin'", SL_ext, sp, P.ext_hat, P.completed_ext), hat_objects, hat_morphisms, seed)
    reports.append(r)
    r = compare_functors("final-diagram-triangle", SI_ext, comp("S_L.S_K", SL_ext, SK_ext, P.ext, P.completed_ext),
                         ext_objects, ext_morphisms, seed)
    reports.append(r)
    return reports


def shin_prime_lands_in_wic(P: WicPair, x: ExtensionObject) -> bool:
    sp, _ = wic_restrictions(P)
    return P.wic_ext.is_member(sp.obj(x))


# ------------------------------------------------- rectangular matrices


def rect_to_ext_equivalence(ring) -> FunctorValue:
    """``M -> Ext_Hom(Mat(R))``: ``X -> X`` and ``(A, B) -> (a = B, c = A)``."""
    ring.require_field("the rectangular-matrix equivalence")
    M = RectCategory(ring)
    Ext = ExtCategory(HomBifunctor(MatCategory(ring)))

    def on_obj(X: RectObject):
        return ExtensionObject(X.m, X.n, X.X)

    return FunctorValue(M, Ext, on_obj, lambda f: ExtMorphism(on_obj(f.source), on_obj(f.target), f.B, f.A), name="M->Ext")


def rect_hom_dimension(ring, X: RectObject, Y: RectObject) -> int:
    from .linalg import Term, solve_hom_system

    unknowns = {"A": (Y.n, X.n), "B": (Y.m, X.m)}
    return solve_hom_system(ring, unknowns, [[Term("B", None, X.X), Term("A", -Y.X, None)]])[0]


def arrow_split(ring, X: CompletedObject):
    """Split a completed extension ``(x, (e_A, e_C))`` onto an honest arrow.

    Returns ``(y, r~, s~)`` with ``r~: (x, e) -> (y, id)`` and ``s~`` inverse.
    """
    from .linalg import rank_factorize_idempotent

    Ext = ExtCategory(HomBifunctor(MatCategory(ring)))
    x, e = X.X, X.e
    y, ru, sv = split_ext_idempotent(Ext, x, e.a, e.c, rank_factorize_idempotent(ring, e.a),
                                     rank_factorize_idempotent(ring, e.c))
    idy = Ext.identity(y)
    return y, CompletedMorphism(idy, ru, e), CompletedMorphism(e, sv, idy)


def arrow_check(ring, objects=(), seed=None) -> SquareReport:
    """Each sampled completed extension is isomorphic to ``S_I`` of an arrow of free modules.

    The arrow ``y`` has source and target dimensions ``rank e_C`` and
    ``rank e_A``, keeps the rank of ``(e_A)_E x``, and is the image of the
    rectangular matrix ``y`` under the equivalence from ``M``.
    """
    from .linalg import rank

    Ext = ExtCategory(HomBifunctor(MatCategory(ring)))
    IC = IdempotentCompletion(Ext)
    SI = include_into_completion(Ext, IC)
    Mf = rect_to_ext_equivalence(ring)
    objects = list(objects)
    rep = SquareReport("arrow-correspondence", len(objects), True, seed=seed)
    for i, X in enumerate(objects):
        try:
            y, rt, st = arrow_split(ring, X)
            Y = SI.obj(y)
            ok = (
                IC.obj_eq(IC.cod(rt), Y)
                and IC.eq(IC.compose(st, rt), IC.identity(X))
                and IC.eq(IC.compose(rt, st), IC.identity(Y))
                and y.A == rank(X.e.a)
                and y.C == rank(X.e.c)
                and rank(y.alpha) == rank(X.e.a @ X.X.alpha)
                and Ext.obj_eq(Mf.obj(RectObject(y.alpha)), y)
            )
            err = None
        except Exception as exc:  # noqa: BLE001
            ok, err = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            rep.passed = rep.equal_on_objects = False
            rep.counterexample = {"index": i, "input": X, "error": err}
            return rep
    return rep
