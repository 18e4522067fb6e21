import random

import pytest

from qpmut.errors import StructuralError
from qpmut.generators import random_quiver
from qpmut.quiver import (Quiver, b_matrix, brute_force_isomorphic, fz_formula, fz_mutate, premutation_quiver,
                          quivers_isomorphic, star)
from oracles import b_matrix_of, fz_oracle, quivers_isomorphic as iso_oracle


def linear_a3():
    return Quiver("123", [("a", "1", "2"), ("b", "2", "3")])


def test_star_is_an_involution_on_names():
    assert star("a") == "a*"
    assert star("a*") == "a"
    assert star(star("[ab]")) == "[ab]"


def test_duplicate_names_rejected():
    with pytest.raises(StructuralError):
        Quiver("12", [("a", "1", "2"), ("a", "2", "1")])
    with pytest.raises(StructuralError):
        Quiver("12", [("a", "1", "3")])


def test_b_matrix_matches_oracle():
    Q = Quiver("123", [("a", "1", "2"), ("a2", "1", "2"), ("b", "3", "2")])
    assert b_matrix(Q) == b_matrix_of(list(Q.vertices), [(a.name, a.source, a.target) for a in Q.arrows])


def test_premutation_of_linear_a3():
    data = premutation_quiver(linear_a3(), "2")
    Q = data.quiver
    assert set(Q.vertices) == {"1", "2*", "3"}
    assert {(a.name, a.source, a.target) for a in Q.arrows} == {
        ("[ab]", "1", "3"), ("a*", "2*", "1"), ("b*", "3", "2*")}


def test_fz_mutation_cancels_two_cycles():
    tri = Quiver("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    Q = fz_mutate(tri, "2")
    assert len(Q.arrows) == 2
    assert not Q.two_cycles()


def test_isomorphism_finds_vertex_map():
    Q1 = linear_a3()
    Q2 = Quiver("xyz", [("u", "z", "y"), ("v", "y", "x")])
    m = quivers_isomorphic(Q1, Q2)
    assert m is not None and m["vertices"]["1"] == "z"
    assert quivers_isomorphic(Q1, Quiver("xyz", [("u", "x", "y"), ("v", "z", "y")])) is None


def test_random_fz_against_oracle():
    rng = random.Random(11)
    for _ in range(60):
        Q = random_quiver(rng, 6, 3)
        k = rng.randrange(len(Q.vertices))
        B = b_matrix(Q)
        assert fz_formula(B, k) == fz_oracle(B, k)
        assert b_matrix(fz_mutate(Q, Q.vertices[k])) == fz_oracle(B, k)


def test_random_isomorphism_against_oracle():
    rng = random.Random(3)
    for _ in range(40):
        Q = random_quiver(rng, 4, 2)
        perm = list(Q.vertices)
        rng.shuffle(perm)
        ren = dict(zip(Q.vertices, perm))
        Q2 = Quiver(Q.vertices, [(a.name, ren[a.source], ren[a.target]) for a in Q.arrows])
        Q3 = random_quiver(rng, 4, 2)
        for R in (Q2, Q3):
            expected = iso_oracle(list(Q.vertices), [(a.name, a.source, a.target) for a in Q.arrows],
                                  list(R.vertices), [(a.name, a.source, a.target) for a in R.arrows])
            assert (quivers_isomorphic(Q, R) is not None) == expected == brute_force_isomorphic(Q, R)
