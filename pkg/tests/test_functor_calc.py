import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from karoubi import generators as G
from karoubi.completion import CompletedObject, WicObject
from karoubi.equivalence import (
    ExtPair,
    WicPair,
    final_diagram_check,
    mem,
    mem_component,
    mem_inverse,
    naturality_square_check,
    rect_hom_dimension,
    rect_to_ext_equivalence,
    shin,
    tsadi,
    two_naturality_check,
    two_naturality_components,
    verify_shin_exactness,
    verify_tsadi_exactness,
    wic_restrictions,
)
from karoubi.errors import PreconditionError
from karoubi.exfunctors import (
    check_exnattrans,
    compare_nattrans,
    complete_exfunctor,
    complete_exnattrans,
    compose_exfunctors,
    davidsstar,
    davidsstar_2,
    exnat_sides,
    horizontal_compose,
    identity_exfunctor,
    identity_exnattrans,
    vertical_compose,
)
from karoubi.extensions import ExtensionObject, ExtMorphism, TildeExtension, hom_ext_dimension
from karoubi.matrix import Matrix
from karoubi.rect import RectObject
from karoubi.registry import Registry
from karoubi.rings import fp, q
from strategies import rng_from, seeds

F2, F5, Q = fp(2), fp(5), q()
fields = st.sampled_from([F2, F5, Q])


def M(rows, ring=F2):
    return Matrix.from_rows(ring, rows)


I1, I2 = Matrix.identity(F2, 1), Matrix.identity(F2, 2)
D10 = M([[1, 0], [0, 0]])
R2 = Registry(F2)
P2 = ExtPair(R2.E, R2.T)


def _alphas(ring, rng, n=5, d=3):
    return [G.matrix(ring, G.dim(rng, d), G.dim(rng, d), rng) for _ in range(n)]


# ------------------------------------------------------------ ex-functors


def test_compose_with_identity_and_quadrupling():
    D = R2.ex("double")
    ident = identity_exfunctor(R2.E)
    a = M([[1, 1], [0, 1]])
    for F in (compose_exfunctors(ident, D), compose_exfunctors(D, ident)):
        assert F.gamma(a) == D.gamma(a) and F.F.obj(3) == 6
    DD = compose_exfunctors(D, D)
    assert DD.F.obj(2) == 8
    assert DD.gamma(a) == a.block_diag(a).block_diag(a).block_diag(a)


@given(seeds, st.data())
def test_exfunctor_composition_associative(seed, data):
    rng = rng_from(seed)
    names = sorted(R2.exfunctors)
    F, L, K = (R2.ex(data.draw(st.sampled_from(names))) for _ in range(3))
    lhs = compose_exfunctors(K, compose_exfunctors(L, F))
    rhs = compose_exfunctors(compose_exfunctors(K, L), F)
    for a in _alphas(F2, rng):
        assert lhs.gamma(a) == rhs.gamma(a) and lhs.F.mor(a) == rhs.F.mor(a)


def test_vertical_horizontal_identities_and_interchange():
    b = R2.nattrans["iota0:identity=>double"].exnat
    one = R2.nattrans["id[double]"].exnat
    dims = [0, 1, 2, 3]
    assert compare_nattrans("v", vertical_compose(one.nt, b.nt), b.nt, dims).passed
    idd = R2.nattrans["id[identity]"].exnat
    h = horizontal_compose(one.nt, one.nt)
    for n in dims:
        assert h.at(n) == Matrix.identity(F2, 4 * n)
    b2 = R2.nattrans["codiagonal:double=>identity"].exnat
    t1 = R2.nattrans["diagonal:identity=>double"].exnat
    t2 = R2.nattrans["p1:double=>identity"].exnat
    lhs = horizontal_compose(vertical_compose(t2.nt, t1.nt), vertical_compose(b2.nt, b.nt))
    rhs = vertical_compose(horizontal_compose(t2.nt, b2.nt), horizontal_compose(t1.nt, b.nt))
    assert compare_nattrans("interchange", lhs, rhs, dims).passed
    assert horizontal_compose(idd.nt, idd.nt).at(2) == I2


def test_complete_exfunctor_examples():
    ident = complete_exfunctor(identity_exfunctor(R2.E), R2.T, R2.T)
    t = TildeExtension(D10, D10, D10)
    assert ident.gamma(t) == t
    D = complete_exfunctor(R2.ex("double"), R2.T, R2.T)
    a = M([[1, 1], [0, 1]])
    assert D.gamma(R2.T.include(a)) == TildeExtension(Matrix.identity(F2, 4), a.block_diag(a), Matrix.identity(F2, 4))
    d4 = Matrix.diag(F2, [1, 0, 1, 0])
    assert D.gamma(t) == TildeExtension(d4, d4, d4)


def test_check_exnattrans_examples():
    alphas = _alphas(F2, rng_from(1))
    assert check_exnattrans(R2.nattrans["id[double]"].exnat, alphas).passed
    assert check_exnattrans(R2.nattrans["zero:identity=>double"].exnat, alphas).passed
    good = R2.nattrans["iota0:identity=>double"].exnat
    bad = R2.nattrans["iota0:identity=>double/zero-gamma"].exnat
    assert check_exnattrans(good, alphas).passed
    rep = check_exnattrans(bad, alphas)
    assert not rep.passed and rep.counterexample is not None
    # direct evaluation: iota_A alpha against Gamma_D(alpha) iota_C
    a = M([[1, 1], [0, 1]])
    i1 = I2.vstack(Matrix.zeros(F2, 2, 2))
    lhs, rhs = exnat_sides(good, a)
    assert lhs == i1 @ a and rhs == a.block_diag(a) @ i1
    lhs, rhs = exnat_sides(bad, a)
    assert lhs == i1 @ a and rhs.is_zero()


@given(fields, seeds)
def test_completed_exnattrans_equation(ring, seed):
    R = Registry(ring)
    rng = rng_from(seed)
    ts = [G.tilde_element(ring, rng, 3) for _ in range(3)]
    for entry in R.nattrans.values():
        if not entry.valid:
            continue
        b = entry.exnat
        bt = complete_exnattrans(b, complete_exfunctor(b.source, R.T, R.T), complete_exfunctor(b.target, R.T, R.T))
        assert check_exnattrans(bt, ts).passed


def test_davidsstar_examples():
    ident = davidsstar(identity_exfunctor(R2.E), P2.ext, P2.ext)
    x = ExtensionObject(1, 1, I1)
    assert ident.obj(x) == x
    Dx = davidsstar(R2.ex("double"), P2.ext, P2.ext).obj(x)
    assert Dx == ExtensionObject(2, 2, I2)
    one = davidsstar_2(identity_exnattrans(R2.ex("double")))
    y = ExtensionObject(2, 1, M([[1], [0]]))
    assert P2.ext.eq(one.at(y), P2.ext.identity(davidsstar(R2.ex("double")).obj(y)))


# ------------------------------------------------------------ shin / tsadi


def _tilde_obj(e_A, alpha, e_C):
    return ExtensionObject(CompletedObject(e_A.rows, e_A), CompletedObject(e_C.rows, e_C), TildeExtension(e_A, alpha, e_C))


def test_shin_examples():
    S = shin(P2)
    a = M([[1, 1], [0, 1]])
    X = S.obj(_tilde_obj(I2, a, I2))
    xx = ExtensionObject(2, 2, a)
    assert X == CompletedObject(xx, ExtMorphism(xx, xx, I2, I2))
    X = S.obj(_tilde_obj(D10, D10, D10))
    dd = ExtensionObject(2, 2, D10)
    assert X == CompletedObject(dd, ExtMorphism(dd, dd, D10, D10))


def test_tsadi_examples():
    T = tsadi(P2)
    x = ExtensionObject(2, 2, M([[1, 1], [0, 1]]))
    z = Matrix.zeros(F2, 2, 2)
    t = T.obj(CompletedObject(x, ExtMorphism(x, x, z, z)))
    assert t.alpha == TildeExtension(z, z, z)
    assert t.A == CompletedObject(2, z)
    Xid = CompletedObject(x, P2.ext.identity(x))
    assert P2.completed_ext.eq(mem_component(P2, Xid), P2.completed_ext.identity(Xid))
    with pytest.raises(PreconditionError):
        T.obj(CompletedObject(x, ExtMorphism(x, x, M([[0, 1], [0, 0]]), z)))


@given(fields, seeds)
def test_tsadi_shin_identity_and_mem(ring, seed):
    R = Registry(ring)
    P = ExtPair(R.E, R.T)
    S, T = shin(P), tsadi(P)
    rng = rng_from(seed)
    x, y = G.tilde_object(ring, rng, 4), G.tilde_object(ring, rng, 4)
    m = G.tilde_morphism(ring, x, y, rng)
    assert P.ext_tilde.obj_eq(T.obj(S.obj(x)), x)
    assert P.ext_tilde.eq(T.mor(S.mor(m)), m)
    IC = P.completed_ext
    X, Y = G.completed_ext_object(ring, rng, 3), G.completed_ext_object(ring, rng, 3)
    f = G.completed_ext_morphism(ring, X, Y, rng)
    nu = mem(P)
    assert IC.eq(IC.compose(mem_inverse(P, X), nu.at(X)), IC.identity(X))
    assert IC.eq(IC.compose(nu.at(X), mem_inverse(P, X)), IC.identity(S.obj(T.obj(X))))
    assert IC.eq(IC.compose(nu.at(Y), f), IC.compose(S.mor(T.mor(f)), nu.at(X)))


@given(fields, seeds)
def test_shin_preserves_composition(ring, seed):
    R = Registry(ring)
    P = ExtPair(R.E, R.T)
    S = shin(P)
    rng = rng_from(seed)
    x, y, z = (G.tilde_object(ring, rng, 3) for _ in range(3))
    f, g = G.tilde_morphism(ring, x, y, rng), G.tilde_morphism(ring, y, z, rng)
    IC = P.completed_ext
    assert IC.eq(S.mor(P.ext_tilde.compose(g, f)), IC.compose(S.mor(g), S.mor(f)))
    assert IC.eq(S.mor(P.ext_tilde.add(f, f)), IC.add(S.mor(f), S.mor(f)))


@given(fields, seeds)
def test_exactness_both_ways(ring, seed):
    R = Registry(ring)
    P = ExtPair(R.E, R.T)
    rng = rng_from(seed)
    f, g = G.tilde_conflation(ring, rng, 3)
    assert verify_shin_exactness(P, f, g)
    F, H = G.completed_ext_conflation(ring, rng, 3)
    assert verify_tsadi_exactness(P, F, H)


def test_shin_exactness_rejects_non_conflation():
    R = Registry(F5)
    P = ExtPair(R.E, R.T)
    f, g = G.tilde_conflation(F5, rng_from(3), 3)
    zero_g = P.ext_tilde.zero(g.source, g.target)
    if not P.ext_tilde.eq(zero_g, g):
        assert not verify_shin_exactness(P, f, zero_g)


# ------------------------------------------------------------ naturality


def _tilde_samples(ring, seed, n=20, d=3):
    rng = rng_from(seed)
    objs = [G.tilde_object(ring, rng, d) for _ in range(n)]
    mors = [G.tilde_morphism(ring, objs[i], objs[(i + 1) % n], rng) for i in range(n)]
    return objs, mors


def test_naturality_square_examples():
    objs, mors = _tilde_samples(F2, 4)
    for name in ("identity", "double"):
        rep = naturality_square_check(R2.ex(name), P2, P2, objs, mors, seed=4)
        assert rep.passed and rep.cases == len(objs)


def test_sign_flip_mutant_fails_and_replays():
    R = Registry(F5)
    P = ExtPair(R.E, R.T)
    objs, mors = _tilde_samples(F5, 9)
    mut = R.sign_flip_completion("double")
    rep = naturality_square_check(R.ex("double"), P, P, objs, mors, seed=9, completed=mut)
    assert not rep.passed
    cx = rep.counterexample
    single = [objs[cx["index"]]] if cx["kind"] == "object" else []
    again = naturality_square_check(R.ex("double"), P, P, single, [] if single else [mors[cx["index"]]],
                                    seed=9, completed=mut)
    assert not again.passed


def test_two_naturality_examples():
    objs, _ = _tilde_samples(F2, 5)
    for name in ("id[identity]", "zero:identity=>double", "iota0:identity=>double", "p1:double=>identity"):
        b = R2.nattrans[name].exnat
        assert two_naturality_check(b, P2, P2, objs, seed=5).passed
    left, right, closed = two_naturality_components(R2.nattrans["zero:identity=>double"].exnat, P2, P2)
    for x in objs:
        assert left.at(x).f.a.is_zero() and right.at(x).f.c.is_zero()
    left, _, _ = two_naturality_components(R2.nattrans["id[identity]"].exnat, P2, P2)
    for x in objs:
        X = shin(P2).obj(x)
        assert P2.completed_ext.eq(left.at(x), P2.completed_ext.identity(X))


# ------------------------------------------------------------ weak completion


def test_shin_prime_examples():
    P = WicPair(R2.E)
    sp, tp = wic_restrictions(P)
    a = M([[1, 1], [0, 1]])
    H = P.H
    x = ExtensionObject(H.member(CompletedObject(2, I2)), H.member(CompletedObject(2, I2)), TildeExtension(I2, a, I2))
    W = sp.obj(x)
    xx = ExtensionObject(2, 2, a)
    assert W.plain() == CompletedObject(xx, ExtMorphism(xx, xx, I2, I2))
    assert P.wic_ext.is_member(W)
    y = ExtensionObject(H.member(CompletedObject(2, D10)), H.member(CompletedObject(2, D10)), TildeExtension(D10, D10, D10))
    W = sp.obj(y)
    assert isinstance(W, WicObject) and P.wic_ext.is_member(W)
    assert P.ext_hat.obj_eq(tp.obj(W), y)


def test_final_diagram_on_100_samples():
    P = WicPair(R2.E)
    rng = rng_from(12)
    eo = [G.ext_object(F2, rng, 3) for _ in range(100)]
    em = [G.ext_morphism(F2, eo[i], eo[(i + 1) % 100], rng) for i in range(100)]
    ho = []
    for _ in range(100):
        t = G.tilde_object(F2, rng, 3)
        ho.append(ExtensionObject(P.H.member(t.A), P.H.member(t.C), t.alpha))
    hm = [G.tilde_morphism(F2, ho[i], ho[(i + 1) % 100], rng) for i in range(100)]
    reps = final_diagram_check(P, eo, em, ho, hm, seed=12)
    assert [r.square for r in reps] == ["final-diagram-left", "final-diagram-right", "final-diagram-triangle"]
    assert all(r.passed for r in reps)


# ------------------------------------------------------------ rectangular


def test_rect_functor_examples():
    Mf = rect_to_ext_equivalence(F2)
    zero = Mf.obj(RectObject(Matrix.zeros(F2, 0, 0)))
    assert Mf.target.obj_eq(zero, Mf.target.zero_object())
    x = Mf.obj(RectObject(M([[1], [0]])))
    assert x == ExtensionObject(2, 1, M([[1], [0]]))


@given(st.sampled_from([2, 3]), seeds)
def test_rect_hom_dimension_matches_enumeration(p, seed):
    ring = fp(p)
    rng = rng_from(seed)
    X, Y = G.rect_object(ring, rng, 2), G.rect_object(ring, rng, 2)
    want = oracle.brute_rect_hom_dim(p, X.X.tolist(), Y.X.tolist(), X.m, X.n, Y.m, Y.n)
    assert rect_hom_dimension(ring, X, Y) == want
    Mf = rect_to_ext_equivalence(ring)
    assert hom_ext_dimension(ring, Mf.obj(X), Mf.obj(Y)) == want
