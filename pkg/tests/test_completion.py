import pytest
from hypothesis import given
from hypothesis import strategies as st

from karoubi import generators as G
from karoubi.category import SplitWitness, compose_functors, is_idempotent, verify_split_witness
from karoubi.completion import (
    UNKNOWN,
    CompletedMorphism,
    CompletedObject,
    ConflationTriple,
    IdempotentCompletion,
    SummandWitness,
    WeakIdempotentCompletion,
    WicObject,
    complete_functor,
    complete_nattrans,
    completed_biproduct,
    completed_morphism_from_json,
    completed_object_from_json,
    include_into_completion,
    include_into_wic,
    split_conflation_membership,
    verify_summand_witness,
    wic_into_completion,
    wic_membership,
)
from karoubi.errors import DomainMismatchError, PreconditionError
from karoubi.exfunctors import compare_functors, compare_nattrans, vertical_compose, horizontal_compose
from karoubi.matrix import MatCategory, Matrix, WitnessOnlyMatCategory
from karoubi.registry import Registry
from karoubi.rings import fp, q
from strategies import rng_from, seeds

F2, F3, F5, Q = fp(2), fp(3), fp(5), q()
fields = st.sampled_from([F2, F5, Q])


def M(rows, ring=F2):
    return Matrix.from_rows(ring, rows)


def C_of(ring):
    return IdempotentCompletion(MatCategory(ring))


E10 = M([[1, 0], [0, 0]])


def test_compose_examples():
    C = C_of(F2)
    e = E10
    f = CompletedMorphism(e, e, e)
    assert C.compose(f, f) == CompletedMorphism(e, e @ e, e) == f
    g = CompletedMorphism(M([[1]]), M([[1, 0]]), e)
    assert C.compose(g, C.identity(CompletedObject(2, e))) == g
    with pytest.raises(DomainMismatchError):
        C.compose(g, CompletedMorphism(Matrix.identity(F2, 2), Matrix.identity(F2, 2), Matrix.identity(F2, 2)))


def test_morphism_invariant_checked():
    C = C_of(F2)
    with pytest.raises(PreconditionError):
        C.mor(E10, Matrix.identity(F2, 2), Matrix.identity(F2, 2))
    assert not C.is_valid_object(CompletedObject(2, M([[0, 1], [0, 0]])))


def test_inclusion_examples():
    base = MatCategory(F2)
    SI = include_into_completion(base)
    assert SI.obj(2) == CompletedObject(2, Matrix.identity(F2, 2))
    z = Matrix.zeros(F2, 3, 2)
    assert SI.mor(z) == CompletedMorphism(Matrix.identity(F2, 3), z, Matrix.identity(F2, 2))


@given(fields, seeds)
def test_inclusion_functorial_and_fully_faithful(ring, seed):
    rng = rng_from(seed)
    base = MatCategory(ring)
    C = IdempotentCompletion(base)
    SI = include_into_completion(base, C)
    X, Y, Z = (G.dim(rng, 4) for _ in range(3))
    f, g = G.matrix(ring, Y, X, rng), G.matrix(ring, Z, Y, rng)
    assert C.eq(SI.mor(g @ f), C.compose(SI.mor(g), SI.mor(f)))
    # every morphism S_I X -> S_I Y is S_I of its middle component
    m = CompletionSamplerMorphism(ring, rng, SI.obj(X), SI.obj(Y))
    assert C.eq(SI.mor(m.f), m)


def CompletionSamplerMorphism(ring, rng, P, Q_):
    return G.CompletionSampler(ring, 4).morphism(rng, P, Q_)


def test_complete_functor_examples():
    R = Registry(F2)
    C = R.T.category
    ident = complete_functor(R.functors["identity"], C, C)
    P = CompletedObject(2, E10)
    assert ident.obj(P) == P
    D = complete_functor(R.functors["double"], C, C)
    assert D.obj(P) == CompletedObject(4, Matrix.diag(F2, [1, 0, 1, 0]))
    SI = include_into_completion(R.cat, C)
    f = M([[1, 1], [0, 1]])
    assert C.eq(D.mor(SI.mor(f)), SI.mor(R.functors["double"].mor(f)))


def test_complete_nattrans_examples():
    R = Registry(F2)
    C = R.T.category
    P = CompletedObject(2, E10)
    idnt = complete_nattrans(R.nattrans["id[identity]"].exnat.nt)
    assert idnt.at(P) == C.identity(P)
    zero = complete_nattrans(R.nattrans["zero:identity=>double"].exnat.nt)
    ee = E10.block_diag(E10)
    assert zero.at(P) == CompletedMorphism(ee, Matrix.zeros(F2, 4, 2), E10)
    iota = complete_nattrans(R.nattrans["iota0:identity=>double"].exnat.nt)
    i1 = Matrix.identity(F2, 2).vstack(Matrix.zeros(F2, 2, 2))
    assert iota.at(P) == CompletedMorphism(ee, ee @ i1 @ E10, E10)
    sampler = G.CompletionSampler(F2, 3)
    rng = rng_from(7)
    D = iota.target
    for _ in range(25):
        Q_ = sampler.object(rng)
        f = sampler.morphism(rng, P, Q_)
        assert C.eq(C.compose(iota.at(Q_), f), C.compose(D.mor(f), iota.at(P)))


@given(fields, seeds, st.data())
def test_completion_respects_composition(ring, seed, data):
    R = Registry(ring)
    C = R.T.category
    rng = rng_from(seed)
    sampler = G.CompletionSampler(ring, 3)
    objs = [sampler.object(rng) for _ in range(3)]
    mors = [sampler.morphism(rng, objs[i], objs[(i + 1) % 3]) for i in range(3)]
    names = sorted(R.functors)
    F = R.functors[data.draw(st.sampled_from(names))]
    L = R.functors[data.draw(st.sampled_from(names))]
    lhs = complete_functor(compose_functors(L, F), C, C)
    rhs = compose_functors(complete_functor(L, C, C), complete_functor(F, C, C))
    assert compare_functors("composite", lhs, rhs, objs, mors).passed
    b1, b2 = data.draw(st.sampled_from(sorted(R.composable_pairs(), key=lambda p: (p[0].name, p[1].name))))
    v1 = complete_nattrans(vertical_compose(b2.nt, b1.nt))
    v2 = vertical_compose(complete_nattrans(b2.nt), complete_nattrans(b1.nt))
    assert compare_nattrans("vertical", v1, v2, objs).passed
    t = data.draw(st.sampled_from(sorted(R.valid_nattrans(), key=lambda b: b.name)))
    h1 = complete_nattrans(horizontal_compose(t.nt, b1.nt))
    h2 = horizontal_compose(complete_nattrans(t.nt), complete_nattrans(b1.nt))
    assert compare_nattrans("horizontal", h1, h2, objs).passed


def test_wic_membership_examples():
    base = MatCategory(F2)
    I = Matrix.identity(F2, 2)
    W = wic_membership(base, CompletedObject(2, I))
    assert isinstance(W, WicObject)
    assert W.witness.r.shape == (0, 2) and W.witness.s.shape == (2, 0)
    W = wic_membership(base, CompletedObject(2, E10))
    assert W.witness == SplitWitness(M([[0, 1]]), M([[0], [1]]))
    assert verify_split_witness(base, I - E10, W.witness)
    assert wic_membership(WitnessOnlyMatCategory(F2), CompletedObject(2, E10)) is UNKNOWN
    with pytest.raises(PreconditionError):
        wic_membership(base, CompletedObject(2, E10), SplitWitness(M([[1, 0]]), M([[1], [0]])))


def test_unknown_refuses_truthiness():
    with pytest.raises(TypeError):
        bool(UNKNOWN)


def test_completed_biproduct_examples():
    C = C_of(F2)
    I1, I2 = Matrix.identity(F2, 1), Matrix.identity(F2, 2)
    b = completed_biproduct(C, CompletedObject(1, I1), CompletedObject(2, I2))
    assert b.obj == CompletedObject(3, Matrix.identity(F2, 3))
    b = completed_biproduct(C, CompletedObject(2, E10), CompletedObject(1, I1))
    assert b.obj == CompletedObject(3, Matrix.diag(F2, [1, 0, 1]))
    c, eq = C.compose, C.eq
    assert eq(c(b.p1, b.i1), C.identity(CompletedObject(2, E10)))
    assert eq(c(b.p2, b.i1), C.zero(CompletedObject(2, E10), CompletedObject(1, I1)))
    assert eq(C.add(c(b.i1, b.p1), c(b.i2, b.p2)), C.identity(b.obj))


def test_wic_biproduct_combines_witnesses():
    W = WeakIdempotentCompletion(MatCategory(F5))
    A = wic_membership(W.base, CompletedObject(2, Matrix.from_rows(F5, [[1, 0], [0, 0]])))
    B = wic_membership(W.base, CompletedObject(1, Matrix.identity(F5, 1)))
    S = W.biproduct(A, B).obj
    assert isinstance(S, WicObject) and W.is_member(S)


def test_split_conflation_examples():
    base = MatCategory(F2)
    i1, p2 = M([[1], [0]]), M([[0, 1]])
    assert split_conflation_membership(base, ConflationTriple(i1, p2)) is True
    I3 = Matrix.identity(F2, 3)
    assert split_conflation_membership(base, ConflationTriple(I3, Matrix.zeros(F2, 0, 3))) is True
    f, g = M([[1], [1]], F3), M([[2, 1]], F3)
    assert split_conflation_membership(MatCategory(F3), ConflationTriple(f, g)) is True
    assert split_conflation_membership(base, ConflationTriple(i1, M([[1, 1]]))) is False
    assert split_conflation_membership(base, ConflationTriple(i1, Matrix.zeros(F2, 0, 2))) is False
    wo = WitnessOnlyMatCategory(F2)
    assert split_conflation_membership(wo, ConflationTriple(i1, p2)) is UNKNOWN
    assert split_conflation_membership(wo, ConflationTriple(i1, p2, M([[1, 0]]), M([[0], [1]]))) is True


def test_summand_witness():
    base = MatCategory(F2)
    C = IdempotentCompletion(base)
    SI = include_into_completion(base, C)
    f0, g0 = M([[1], [0]]), M([[0, 1]])
    seq = ConflationTriple(SI.mor(f0), SI.mor(g0))
    ids = tuple(C.identity(SI.obj(n)) for n in (1, 2, 1))
    assert verify_summand_witness(C, seq, SummandWitness(ConflationTriple(f0, g0), ids, ids))
    bad = (ids[0], C.zero(SI.obj(2), SI.obj(2)), ids[2])
    assert not verify_summand_witness(C, seq, SummandWitness(ConflationTriple(f0, g0), bad, ids))


@given(fields, seeds)
def test_completion_is_idempotent_complete(ring, seed):
    rng = rng_from(seed)
    sampler = G.CompletionSampler(ring, 4)
    C = IdempotentCompletion(MatCategory(ring))
    P = sampler.object(rng)
    m = sampler.idempotent_on(rng, P)
    assert is_idempotent(C, m)
    w = C.split_idempotent(m)
    assert verify_split_witness(C, m, w)


@given(fields, seeds)
def test_inclusion_triangle(ring, seed):
    rng = rng_from(seed)
    base = MatCategory(ring)
    W = WeakIdempotentCompletion(base)
    SK, SL = include_into_wic(base, W), wic_into_completion(W)
    SI = include_into_completion(base, IdempotentCompletion(base))
    X, Y = G.dim(rng, 4), G.dim(rng, 4)
    f = G.matrix(ring, Y, X, rng)
    assert SL.obj(SK.obj(X)) == SI.obj(X)
    assert SL.mor(SK.mor(f)) == SI.mor(f)
    assert W.is_member(SK.obj(X))


def test_json_roundtrip():
    m = CompletedMorphism(E10, E10, E10)
    assert completed_morphism_from_json(m.to_json(), F2) == m
    P = CompletedObject(2, E10)
    assert completed_object_from_json(P.to_json(), F2) == P
