"""Seeded random quivers, potentials and representations for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .linalg import Matrix
from .paths import TruncatedElement, canonical_rotation, enumerate_paths, is_cycle
from .qp import QP
from .quiver import Quiver


def random_quiver(rng: random.Random, max_vertices: int = 6, max_parallel: int = 3,
                  density: float = 0.5) -> Quiver:
    """No loops and no 2-cycles; at most ``max_parallel`` arrows per ordered pair."""
    n = rng.randint(2, max_vertices)
    vs = [str(i + 1) for i in range(n)]
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() > density:
                continue
            m = rng.randint(1, max_parallel)
            s, t = (vs[i], vs[j]) if rng.random() < 0.5 else (vs[j], vs[i])
            for r in range(m):
                arrows.append((f"x{s}{t}" + ("" if r == 0 else str(r)), s, t))
    return Quiver(vs, arrows)


def random_coeff(rng: random.Random, spread: int = 3) -> Fraction:
    c = 0
    while c == 0:
        c = rng.randint(-spread, spread)
    return Fraction(c, rng.randint(1, 2))


def cycles_of_length(Q: Quiver, lo: int, hi: int) -> list:
    out = set()
    for key in enumerate_paths(Q, hi):
        if len(key[1]) >= lo and is_cycle(Q, key):
            out.add(canonical_rotation(Q, key))
    return sorted(out, key=lambda k: (len(k[1]), k[1]))


def random_potential(rng: random.Random, Q: Quiver, N: int, lo: int = 2, hi: int = 6,
                     max_terms: int = 5) -> TruncatedElement:
    cyc = cycles_of_length(Q, lo, hi)
    terms = {}
    if cyc:
        for key in rng.sample(cyc, min(len(cyc), rng.randint(1, max_terms))):
            terms[key] = random_coeff(rng)
    return TruncatedElement(Q, N, terms)


def random_element(rng: random.Random, Q: Quiver, N: int, max_len: int = 4,
                   max_terms: int = 6, constant_free: bool = True) -> TruncatedElement:
    paths = [k for k in enumerate_paths(Q, max_len) if not constant_free or k[1]]
    terms = {}
    if paths:
        for key in rng.sample(paths, min(len(paths), rng.randint(1, max_terms))):
            terms[key] = random_coeff(rng)
    return TruncatedElement(Q, N, terms)


def cyclic_quiver(rng: random.Random, max_vertices: int = 5) -> Quiver:
    """A random quiver guaranteed to contain an oriented cycle of length >= 3."""
    while True:
        Q = random_quiver(rng, max_vertices, 2, 0.7)
        if cycles_of_length(Q, 3, 4):
            return Q


def random_reduced_qp(rng: random.Random, N: int = 8, max_vertices: int = 5) -> QP:
    Q = cyclic_quiver(rng, max_vertices)
    return QP(Q, random_potential(rng, Q, N, 3, 5, 4), (), N)


def random_matrix(rng: random.Random, nrows: int, ncols: int, spread: int = 2) -> Matrix:
    return Matrix([[Fraction(rng.randint(-spread, spread)) for _ in range(ncols)] for _ in range(nrows)], ncols)
