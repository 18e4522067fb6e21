from fractions import Fraction

import pytest

from qpmut.corpus import load_fixture
from qpmut.errors import PreconditionError
from qpmut.linalg import Matrix
from qpmut.qp import QP, split_reduce
from qpmut.quiver import Quiver
from qpmut.paths import TruncatedElement
from qpmut.representation import (Representation, RepMorphism, are_isomorphic, check_nearly_morita, hom_space,
                                  mutate_and_reduce, mutate_morphism, mutate_rep, mutate_rep_full, reduce_rep,
                                  simple_rep, strip_simple_summands, validate_rep, vertex_scaffold, zero_rep)
from qpmut.serialize import morphism_from_json, qp_from_json, rep_from_json


def one(x=1):
    return Matrix([[Fraction(x)]])


@pytest.fixture
def example():
    doc = load_fixture("rep_example")
    P = qp_from_json(doc["qp"])
    reps = [rep_from_json(P.quiver, r) for r in doc["reps"]]
    return doc, P, reps


def test_simples_are_valid(tri):
    for v in tri.quiver.vertices:
        r = validate_rep(tri, simple_rep(tri, v))
        assert r.valid and r.nilpotency_bound == 1


def test_identity_rep_on_cycle(tri):
    M = Representation(tri.quiver, {"1": 1, "2": 1, "3": 1}, {a: one() for a in "abc"})
    assert M.nilpotency_bound() is None
    assert not validate_rep(tri, M).valid


def test_relation_violation_reported(tri):
    M = Representation(tri.quiver, {"1": 1, "2": 1, "3": 1}, {"a": one(), "b": one()})
    r = validate_rep(tri, M)
    assert not r.valid and r.to_dict()["nonzero_relations"] == ["c"]


def test_truncation_below_nilpotency_is_precondition(a3):
    M = Representation(a3.quiver, {"1": 1, "2": 1, "3": 1}, {"a": one(), "b": one()})
    assert M.nilpotency_bound() == 3
    with pytest.raises(PreconditionError):
        validate_rep(a3.with_truncation(2), M)


def test_scaffold_shapes(example):
    _, P, (M1, M2) = example
    S = vertex_scaffold(P, M1, "2")
    assert S.ins == ["alpha"] and S.outs == ["beta"]
    assert S.alpha.shape == (1, 0) and S.beta.shape == (0, 1) and S.gamma.shape == (1, 1)
    assert S.dims3 == (0, 1, 0)
    assert (S.alpha_tilde.shape, S.beta_tilde.shape) == ((1, 1), (1, 1))


def test_example_images(example):
    doc, P, reps = example
    for i, M in enumerate(reps):
        m = mutate_rep_full(P, M, "2")
        shown = rep_from_json(m.qp.quiver, doc["displayed_images"][i])
        assert validate_rep(m.qp, m.rep).valid
        assert are_isomorphic(m.rep, shown)
        assert list(m.summand_dims) == doc["formula_summands"][i]


def test_example_morphism(example):
    doc, P, (M1, M2) = example
    f = morphism_from_json(M1, M2, doc["morphism"])
    assert f.commutes()
    g = mutate_morphism(P, f, "2")
    assert g.commutes() and not g.is_zero()


def test_identity_and_zero_morphisms(example):
    _, P, (M1, M2) = example
    g = mutate_morphism(P, RepMorphism.identity(M1), "2")
    assert (g - RepMorphism.identity(g.source)).is_zero()
    z = RepMorphism(M1, M2, {})
    assert mutate_morphism(P, z, "2").is_zero()


def test_scaffold_strategies_agree_up_to_iso(tri):
    M = Representation(tri.quiver, {"1": 1, "2": 1, "3": 0}, {"a": one()})
    assert are_isomorphic(mutate_rep(tri, M, "2", 1), mutate_rep(tri, M, "2", 2))


def test_simple_at_mutation_vertex_vanishes(tri):
    P2, R, kk = mutate_and_reduce(tri, simple_rep(tri, "2"), "2")
    assert R.is_zero()


def test_reduce_rep_identity(a3):
    M = Representation(a3.quiver, {"1": 1, "2": 1, "3": 1}, {"a": one(), "b": one()})
    s = split_reduce(a3)
    assert reduce_rep(a3, M, s) == M.over(s.reduced.quiver)


def test_reduce_two_cycle_to_empty_quiver():
    Q = Quiver("12", [("a", "1", "2"), ("b", "2", "1")])
    P = QP(Q, TruncatedElement.from_terms(Q, 6, [(1, "a b")]), (), 6)
    s = split_reduce(P)
    assert len(s.reduced.quiver.arrows) == 0
    M = Representation(Q, {"1": 1, "2": 1})
    assert validate_rep(P, M).valid
    R = reduce_rep(P, M, s)
    assert R.dim_vector() == {"1": 1, "2": 1} and R.quiver == s.reduced.quiver
    bad = Representation(Q, {"1": 1, "2": 1}, {"a": one()})
    assert not validate_rep(P, bad).valid


def test_hom_spaces(a3):
    Q = a3.quiver
    for v in Q.vertices:
        assert len(hom_space(simple_rep(Q, v), simple_rep(Q, v))) == 1
    assert hom_space(simple_rep(Q, "1"), simple_rep(Q, "3")) == []
    P1 = Representation(Q, {"1": 1, "2": 1, "3": 1}, {"a": one(), "b": one()})
    assert len(hom_space(P1, simple_rep(Q, "1"))) == 1
    assert len(hom_space(simple_rep(Q, "1"), P1)) == 0
    for f in hom_space(P1, P1):
        assert f.commutes()


def test_isomorphism_detection(a3):
    Q = a3.quiver
    M = Representation(Q, {"1": 1, "2": 2, "3": 1}, {"a": Matrix([[1, 0]]), "b": Matrix([[1], [0]])})
    g = {"1": one(3), "2": Matrix([[1, 2], [0, 1]]), "3": one(-1)}
    assert are_isomorphic(M, M.base_change(g))
    assert not are_isomorphic(simple_rep(Q, "1"), simple_rep(Q, "2"))
    N = Representation(Q, {"1": 1, "2": 2, "3": 1}, {"a": Matrix([[1, 0]]), "b": Matrix([[0], [1]])})
    assert not are_isomorphic(M, N)


def test_strip_simple_summands(tri):
    S = simple_rep(tri, "2")
    R, m = strip_simple_summands(S, "2")
    assert m == 1 and R.is_zero()
    M = Representation(tri.quiver, {"1": 1, "2": 1, "3": 0}, {"a": one()})
    R, m = strip_simple_summands(M.direct_sum(S), "2")
    assert m == 1 and are_isomorphic(R, M)
    R, m = strip_simple_summands(M, "2")
    assert m == 0


def test_nearly_morita_on_cycle(tri):
    from qpmut.acceptance import tri_indecomposables
    P, inds = tri_indecomposables()
    for k in P.quiver.vertices:
        rep = check_nearly_morita(P, k, inds, seed=1)
        assert rep.ok, rep.to_dict()


def test_zero_rep(tri):
    Z = zero_rep(tri.quiver)
    assert Z.is_zero() and validate_rep(tri, Z).valid
    assert mutate_rep(tri, Z, "1").is_zero()
