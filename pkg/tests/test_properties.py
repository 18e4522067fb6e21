import random

from hypothesis import given, settings, strategies as st

from qpmut import generators as gen
from qpmut.paths import (Substitution, enumerate_paths, path_end, TruncatedElement, cyclic_derivative, cyclic_normal_form, left_derivative,
                         multiply, right_derivative, second_derivative, substitute)
from qpmut.qp import QP, mutate, split_reduce
from qpmut.quiver import b_matrix, fz_mutate, quivers_isomorphic
import oracles

seeds = st.integers(min_value=0, max_value=2**32 - 1)
N = 8


def cyclic_qp(seed):
    rng = random.Random(seed)
    Q = gen.cyclic_quiver(rng, 5)
    return rng, Q, gen.random_potential(rng, Q, N, 2, 6, 5)


def as_tuples(x):
    return {p: c for (_, p), c in x.terms.items()}


def same(x, y):
    return (x - y).is_zero()


def arrow(Q, a):
    return TruncatedElement.path(Q, N, [a])


def rotated(W, rng):
    terms = {}
    for (s, p), c in W.terms.items():
        i = rng.randrange(len(p))
        q = p[i:] + p[:i]
        key = (W.quiver.source(q[0]), q)
        terms[key] = terms.get(key, 0) + c
    return TruncatedElement(W.quiver, W.N, terms)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(seeds)
def test_cyclic_derivatives_match_oracle(seed):
    _, Q, W = cyclic_qp(seed)
    for a in Q.arrow_names:
        assert as_tuples(cyclic_derivative(a, W)) == oracles.cyclic_derivative(a, as_tuples(W))
        for b in Q.arrow_names:
            assert as_tuples(second_derivative(a, b, W)) == oracles.second_derivative(a, b, as_tuples(W))


@settings(max_examples=40, deadline=None, derandomize=True)
@given(seeds)
def test_second_derivative_identities(seed):
    _, Q, W = cyclic_qp(seed)
    names = Q.arrow_names
    for b in names:
        db = cyclic_derivative(b, W)
        lhs = sum((multiply(second_derivative(a, b, W), arrow(Q, a)) for a in names), TruncatedElement.zero(Q, N))
        rhs = sum((multiply(arrow(Q, a), second_derivative(b, a, W)) for a in names), TruncatedElement.zero(Q, N))
        assert same(lhs, db) and same(rhs, db)
        for a in names:
            d = second_derivative(a, b, W)
            assert same(d, right_derivative(a, db))
            assert same(d, left_derivative(b, cyclic_derivative(a, W)))


@settings(max_examples=40, deadline=None, derandomize=True)
@given(seeds)
def test_reconstruction_from_one_sided_derivatives(seed):
    rng = random.Random(seed)
    Q = gen.random_quiver(rng, 5)
    x = gen.random_element(rng, Q, N)
    r = l = TruncatedElement.zero(Q, N)
    for a in Q.arrow_names:
        r = r + multiply(right_derivative(a, x), arrow(Q, a))
        l = l + multiply(arrow(Q, a), left_derivative(a, x))
    assert same(r, x) and same(l, x)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(seeds)
def test_cyclic_derivative_ignores_rotation(seed):
    rng, Q, W = cyclic_qp(seed)
    V = rotated(W, rng)
    assert cyclic_normal_form(V) == cyclic_normal_form(W)
    for a in Q.arrow_names:
        assert same(cyclic_derivative(a, V), cyclic_derivative(a, W))


def random_substitution(rng, Q):
    images = {}
    for a in Q.arrows:
        img = TruncatedElement.path(Q, N, [a.name], gen.random_coeff(rng))
        for key in enumerate_paths(Q, 3, a.source):
            s, p = key
            if 2 <= len(p) and path_end(Q, key) == a.target and rng.random() < 0.5:
                img = img + TruncatedElement(Q, N, {key: gen.random_coeff(rng)})
        images[a.name] = img
    return Substitution(Q, Q, N, images)


@settings(max_examples=30, deadline=None, derandomize=True)
@given(seeds)
def test_substitution_is_multiplicative_and_invertible(seed):
    rng, Q, W = cyclic_qp(seed)
    phi = random_substitution(rng, Q)
    x = gen.random_element(rng, Q, N, 3)
    y = gen.random_element(rng, Q, N, 3)
    assert same(substitute(phi, multiply(x, y)), multiply(substitute(phi, x), substitute(phi, y)))
    assert phi.compose(phi.inverse()).is_identity()
    assert phi.inverse().compose(phi).is_identity()


@settings(max_examples=30, deadline=None, derandomize=True)
@given(seeds)
def test_substitution_respects_cyclic_equivalence(seed):
    rng, Q, W = cyclic_qp(seed)
    phi = random_substitution(rng, Q)
    V = rotated(W, rng)
    assert cyclic_normal_form(phi(V)) == cyclic_normal_form(phi(W))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(seeds)
def test_fz_mutation_is_an_involution(seed):
    rng = random.Random(seed)
    Q = gen.random_quiver(rng, 6)
    k = rng.choice(list(Q.vertices))
    B = b_matrix(Q)
    once = fz_mutate(Q, k)
    assert b_matrix(once) == oracles.fz_oracle(B, list(Q.vertices).index(k))
    twice = fz_mutate(once, [v for v in once.vertices if v not in Q.vertices][0])
    assert b_matrix(twice) == B


@settings(max_examples=30, deadline=None, derandomize=True)
@given(seeds)
def test_split_reduce_postcondition_and_idempotence(seed):
    rng, Q, W = cyclic_qp(seed)
    k = rng.choice(list(Q.vertices))
    from qpmut.qp import premutate
    P = premutate(QP(Q, W, (), N), k)
    s = split_reduce(P)
    assert s.check(P)
    assert s.reduced.is_reduced()
    again = split_reduce(s.reduced)
    assert again.trivial_pairs == [] and again.reduced.potential.terms == s.reduced.potential.terms


@settings(max_examples=25, deadline=None, derandomize=True)
@given(seeds)
def test_mutation_quiver_matches_fz_when_reduced(seed):
    rng = random.Random(seed)
    P = gen.random_reduced_qp(rng, N, 4)
    k = rng.choice(list(P.quiver.vertices))
    if P.quiver.two_cycles(through=k):
        return
    M, _ = mutate(P, k)
    if not M.quiver.two_cycles():
        Qm = M.quiver.renamed(vertices={v: v.rstrip("*") for v in M.quiver.vertices})
        assert quivers_isomorphic(Qm, fz_mutate(P.quiver, k).renamed(
            vertices={v: v.rstrip("*") for v in fz_mutate(P.quiver, k).vertices})) is not None
