import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpmut.coxeter import CoxeterDatum, is_reduced_word, word_qp, word_qp_rigidity, word_quiver
from qpmut.errors import PreconditionError
from qpmut.jacobian import is_full_cycle
from qpmut.quiver import Quiver

A3 = Quiver("123", [("a", "1", "2"), ("b", "2", "3")])
TRI = Quiver("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])


def reflection_matrix(C, letter):
    n = len(C.letters)
    cols = [C.reflect(letter, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def mul(x, y):
    n = len(x)
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def lengths_by_bfs(C, depth):
    gens = {u: reflection_matrix(C, u) for u in C.letters}
    n = len(C.letters)
    e = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    dist, frontier = {e: 0}, [e]
    for d in range(1, depth + 1):
        nxt = []
        for g in frontier:
            for s in gens.values():
                h = mul(g, s)
                if h not in dist:
                    dist[h] = d
                    nxt.append(h)
        frontier = nxt
    return gens, dist


def word_element(gens, word, n):
    g = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    for u in word:
        g = mul(g, gens[u])
    return g


def test_bilinear_form():
    C = CoxeterDatum(Quiver("12", [("a", "1", "2"), ("b", "1", "2")]))
    assert C.m[0][1] == 0 and C.B[0][1] == -1
    C = CoxeterDatum(A3)
    assert C.m[0][2] == 2 and C.B[0][1] == Fraction(-1, 2)


def test_reduced_words_of_a3_against_cayley_graph():
    C = CoxeterDatum(A3)
    gens, dist = lengths_by_bfs(C, 7)
    assert len(dist) == 24
    for m in range(1, 6):
        for w in itertools.product("123", repeat=m):
            assert is_reduced_word(C, w) == (dist[word_element(gens, w, 3)] == m), w


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.lists(st.sampled_from("123"), min_size=1, max_size=6))
def test_reduced_words_of_affine_type(w):
    C = CoxeterDatum(TRI)
    gens, dist = lengths_by_bfs(C, len(w))
    g = word_element(gens, w, 3)
    assert is_reduced_word(C, w) == (dist.get(g) == len(w))


def test_word_quiver_structure():
    C = CoxeterDatum(TRI)
    word = list("12131231232")
    wq = word_quiver(C, word)
    assert len(wq.quiver.vertices) == len(word)
    last = {u: word.count(u) for u in "123"}
    assert sorted(wq.frozen) == sorted(f"{u}_{last[u]}" for u in "123")
    lefts = [a for a in wq.quiver.arrows if wq.kinds[a.name][0] == "left"]
    assert len(lefts) == len(word) - 3
    for a in lefts:
        u, r = wq.typing[a.source]
        assert wq.typing[a.target] == (u, r - 1)
    for a in wq.quiver.arrows:
        if wq.kinds[a.name][0] == "right":
            assert wq.position[a.source] < wq.position[a.target]
    assert set(wq.stable.vertices) == set(wq.quiver.vertices) - set(wq.frozen)


def test_non_reduced_word_rejected():
    with pytest.raises(PreconditionError):
        word_quiver(CoxeterDatum(A3), ["1", "1"])


def test_word_potential_cycles_are_full():
    C = CoxeterDatum(TRI)
    _, stable, _ = word_qp(C, list("12131231232"), 12)
    assert stable.potential.terms
    assert all(is_full_cycle(stable.quiver, p) for (_, p) in stable.potential.terms)


@pytest.mark.parametrize("base,word", [(A3, "121"), (A3, "12312"), (TRI, "1213")])
def test_small_word_qps_are_rigid(base, word):
    v = word_qp_rigidity(CoxeterDatum(base), list(word), 10)
    assert v.status in ("RIGID_CERTIFIED", "RIGID_UP_TO_N")
