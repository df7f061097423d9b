import pytest

from karoubi import generators as G
from karoubi.category import (
    SplitWitness,
    case_rng,
    check_additive_laws,
    direct_sum,
    is_idempotent,
    verify_split_witness,
)
from karoubi.completion import CompletedObject, IdempotentCompletion
from karoubi.errors import DomainMismatchError, GenerationError
from karoubi.matrix import MatCategory, Matrix
from karoubi.rings import fp, q

F2, F5, Q = fp(2), fp(5), q()
Mat2 = MatCategory(F2)


def M(rows, ring=F2):
    return Matrix.from_rows(ring, rows)


def test_is_idempotent_examples():
    assert is_idempotent(Mat2, Matrix.zeros(F2, 2, 2))
    assert is_idempotent(Mat2, M([[1, 1], [0, 0]]))
    assert not is_idempotent(Mat2, M([[0, 1], [0, 0]]))
    with pytest.raises(DomainMismatchError):
        is_idempotent(Mat2, M([[1, 0]]))


def test_verify_split_witness_examples():
    I = Matrix.identity(F2, 2)
    assert verify_split_witness(Mat2, I, SplitWitness(I, I))
    e = M([[1, 1], [0, 0]])
    assert verify_split_witness(Mat2, e, SplitWitness(M([[1, 1]]), M([[1], [0]])))
    assert not verify_split_witness(Mat2, e, SplitWitness(M([[1, 0]]), M([[1], [0]])))
    with pytest.raises(DomainMismatchError):
        verify_split_witness(Mat2, e, SplitWitness(M([[1, 1, 0]]), M([[1], [0]])))


def test_direct_sum_examples():
    b = direct_sum(Mat2, 1, 2)
    assert b.obj == 3
    assert b.i1 == M([[1], [0], [0]]) and b.p1 == M([[1, 0, 0]])
    bq = direct_sum(MatCategory(Q), 0, 3)
    assert bq.obj == 3 and bq.i2 == Matrix.identity(Q, 3) == bq.p2
    C = IdempotentCompletion(Mat2)
    P, R = CompletedObject(2, M([[1, 0], [0, 0]])), CompletedObject(1, M([[1]]))
    assert direct_sum(C, P, R).obj == CompletedObject(3, Matrix.diag(F2, [1, 0, 1]))


def test_additive_laws_mat_f5():
    rep = check_additive_laws(MatCategory(F5), G.MatSampler(F5, 4), seed=3, size=200)
    assert rep.passed and rep.cases == 200 and rep.counterexample is None


class _Transposed(MatCategory):
    def compose(self, g, f):
        return (g @ f).T


class _Square:
    def object(self, rng):
        return 2

    def morphism(self, rng, X, Y):
        return G.matrix(F5, Y, X, rng)


def test_corrupted_compose_is_caught_and_replays():
    rep = check_additive_laws(_Transposed(F5), _Square(), seed=11, size=200)
    assert not rep.passed
    cx = rep.counterexample
    assert cx["law"] and "replay" in cx
    # the recorded case index reproduces the failure on its own
    again = check_additive_laws(_Transposed(F5), _Square(), seed=11, size=cx["replay"]["case"] + 1)
    assert not again.passed and again.counterexample["law"] == cx["law"]


def test_empty_sample_is_vacuous():
    rep = check_additive_laws(Mat2, G.MatSampler(F2, 3), seed=0, size=0)
    assert rep.passed and rep.cases == 0


class _BadSampler(_Square):
    def morphism(self, rng, X, Y):
        return G.matrix(F5, Y + 1, X, rng)


def test_ill_typed_generator():
    with pytest.raises(GenerationError):
        check_additive_laws(MatCategory(F5), _BadSampler(), seed=0, size=1)


def test_case_rng_is_deterministic():
    a = case_rng(5, "x", 1).random()
    assert a == case_rng(5, "x", 1).random() != case_rng(5, "x", 2).random()


def test_law_report_json_shape():
    rep = check_additive_laws(Mat2, G.MatSampler(F2, 2), seed=1, size=3, law="mat")
    assert rep.to_json() == {"law": "mat", "cases": 3, "pass": True, "counterexample": None, "seed": 1}
