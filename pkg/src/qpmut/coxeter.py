"""Coxeter groups of quivers, reduced words, and the associated word quivers with potential."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, StructuralError
from .paths import TruncatedElement
from .qp import DEFAULT_TRUNCATION, QP
from .quiver import Arrow, Quiver, star


class CoxeterDatum:
    """Coxeter matrix and the symmetric bilinear form of a loop-free quiver.

    ``m_ij`` is 2, 3 or infinity (stored as 0) for no arrow, one arrow, or
    several arrows between ``i`` and ``j``.
    """

    def __init__(self, Q: Quiver):
        Q.check_no_loops()
        self.quiver = Q
        self.letters = list(Q.vertices)
        n = len(self.letters)
        self.m = [[1] * n for _ in range(n)]
        self.B = [[Fraction(0)] * n for _ in range(n)]
        for x, i in enumerate(self.letters):
            self.B[x][x] = Fraction(1)
            for y, j in enumerate(self.letters):
                if x == y:
                    continue
                k = Q.count(i, j) + Q.count(j, i)
                self.m[x][y] = 2 if k == 0 else 3 if k == 1 else 0
                self.B[x][y] = Fraction(0) if k == 0 else Fraction(-1, 2) if k == 1 else Fraction(-1)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(str(letter))
        except ValueError:
            raise StructuralError(f"unknown letter {letter!r}") from None

    def reflect(self, letter: str, v: list[Fraction]) -> list[Fraction]:
        i = self.index(letter)
        c = 2 * sum(self.B[i][j] * v[j] for j in range(len(v)))
        out = list(v)
        out[i] -= c
        return out

    def simple_root(self, letter: str) -> list[Fraction]:
        v = [Fraction(0)] * len(self.letters)
        v[self.index(letter)] = Fraction(1)
        return v

    def word_roots(self, word: Sequence[str]) -> list[list[Fraction]]:
        """The roots ``s_{u_1} ... s_{u_{t-1}} (alpha_{u_t})`` for ``t = 1..m``."""
        word = [str(u) for u in word]
        for u in word:
            self.index(u)
        roots = []
        for t, u in enumerate(word):
            v = self.simple_root(u)
            for x in reversed(word[:t]):
                v = self.reflect(x, v)
            roots.append(v)
        return roots


def is_reduced_word(C: CoxeterDatum, word: Sequence[str]) -> bool:
    return all(all(c >= 0 for c in r) for r in C.word_roots(word))


def doubled_quiver(Q: Quiver, N: int = DEFAULT_TRUNCATION) -> tuple[Quiver, TruncatedElement, dict[str, int]]:
    """Quiver with an opposite arrow ``a*`` for each arrow, the element
    ``sum (a a* - a* a)`` and the signs ``eps(a) = 1``, ``eps(a*) = -1``."""
    Q.check_no_loops()
    arrows = list(Q.arrows) + [Arrow(star(a.name), a.target, a.source) for a in Q.arrows]
    D = Quiver(Q.vertices, arrows)
    eps = {a.name: 1 for a in Q.arrows}
    eps.update({star(a.name): -1 for a in Q.arrows})
    rel = TruncatedElement.zero(D, N)
    for a in Q.arrows:
        rel = rel + TruncatedElement.path(D, N, [a.name, star(a.name)])
        rel = rel - TruncatedElement.path(D, N, [star(a.name), a.name])
    return D, rel, eps


@dataclass
class WordQuiver:
    word: list[str]
    quiver: Quiver
    typing: dict[str, tuple[str, int]]      # vertex -> (type, occurrence index)
    position: dict[str, int]                # vertex -> 1-based position in the word
    kinds: dict[str, tuple]                 # arrow -> ("left", type) or ("right", base name, eps)
    frozen: list[str]
    stable: Quiver = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "vertices": [{"id": v, "type": self.typing[v][0], "index": self.typing[v][1],
                          "position": self.position[v]} for v in self.quiver.vertices],
            "arrows": [{"name": a.name, "from": a.source, "to": a.target,
                        "kind": self.kinds[a.name][0],
                        **({"base": self.kinds[a.name][1], "eps": self.kinds[a.name][2]}
                           if self.kinds[a.name][0] == "right" else {})}
                       for a in self.quiver.arrows],
            "frozen": self.frozen,
        }


def vertex_name(letter: str, r: int) -> str:
    return f"{letter}_{r}"


def left_arrow_name(letter: str, r: int) -> str:
    return f"L:{letter}:{r}"


def word_quiver(C: CoxeterDatum, word: Sequence[str]) -> WordQuiver:
    word = [str(u) for u in word]
    if not is_reduced_word(C, word):
        raise PreconditionError(f"word {word} is not reduced")
    counts: dict[str, int] = {}
    names = []
    typing, position = {}, {}
    for pos, u in enumerate(word, start=1):
        counts[u] = counts.get(u, 0) + 1
        v = vertex_name(u, counts[u])
        names.append(v)
        typing[v] = (u, counts[u])
        position[v] = pos
    arrows: list[Arrow] = []
    kinds: dict[str, tuple] = {}
    # (i) left arrows between consecutive vertices of the same type
    for v in names:
        u, r = typing[v]
        if r > 1:
            nm = left_arrow_name(u, r)
            arrows.append(Arrow(nm, v, vertex_name(u, r - 1)))
            kinds[nm] = ("left", u)
    # (ii) right arrows, one candidate target per source and doubled-quiver arrow
    D, _, eps = doubled_quiver(C.quiver)
    m = len(word)
    for base in D.arrows:
        i, j = base.source, base.target
        for x in range(m):
            if word[x] != i:
                continue
            nxt = next((y for y in range(x + 1, m) if word[y] == i), m)
            js = [y for y in range(x + 1, nxt) if word[y] == j]
            if not js:
                continue
            y = js[-1]
            src, tgt = names[x], names[y]
            nm = f"{base.name}_{typing[src][1]}"
            arrows.append(Arrow(nm, src, tgt))
            kinds[nm] = ("right", base.name, eps[base.name])
    last: dict[str, str] = {}
    for v in names:
        last[typing[v][0]] = v
    frozen = [last[u] for u in C.letters if u in last]
    Qw = Quiver(names, arrows)
    return WordQuiver(word, Qw, typing, position, kinds, frozen, Qw.without_vertices(frozen))


def _word_potential(wq: WordQuiver, Q: Quiver, N: int) -> TruncatedElement:
    terms: dict = {}
    for b in Q.arrows:
        kind = wq.kinds[b.name]
        if kind[0] != "right":
            continue
        _, base, e = kind
        i, r = wq.typing[b.source]
        cands = [c for c in Q.arrows_from(b.target)
                 if wq.kinds[c.name][0] == "right" and wq.kinds[c.name][1] == star(base)]
        if not cands:
            continue
        if len(cands) > 1:
            raise StructuralError(f"several star arrows continue {b.name}")  # pragma: no cover
        bs = cands[0]
        ti, t = wq.typing[bs.target]
        if ti != i or t < r:
            raise StructuralError(f"{bs.name} does not return to the left of {b.source}")  # pragma: no cover
        p = tuple(left_arrow_name(i, s) for s in range(t, r, -1))
        if any(not Q.has_arrow(x) for x in p):
            continue
        key = (b.source, (b.name, bs.name) + p)
        terms[key] = terms.get(key, 0) + e
    return TruncatedElement(Q, N, terms)


def word_qp(C: CoxeterDatum, word: Sequence[str], N: int = DEFAULT_TRUNCATION) -> tuple[QP, QP, WordQuiver]:
    """Frozen QP on the full word quiver and the QP on its stable part."""
    wq = word_quiver(C, word)
    full = QP(wq.quiver, _word_potential(wq, wq.quiver, N), wq.frozen, N)
    stable = QP(wq.stable, _word_potential(wq, wq.stable, N), (), N)
    return full, stable, wq


def word_qp_rigidity(C: CoxeterDatum, word: Sequence[str], N: int = DEFAULT_TRUNCATION):
    from .jacobian import rigidity_verdict

    _, stable, _ = word_qp(C, word, N)
    return rigidity_verdict(stable)


def display_aliases(wq: WordQuiver, letters: dict[str, str]) -> dict[str, str]:
    """Short names ``p_r``, ``q_r``, ... for left arrows, given one letter per type."""
    out = {}
    for name, kind in wq.kinds.items():
        if kind[0] == "left":
            r = name.rsplit(":", 1)[1]
            out[name] = f"{letters[kind[1]]}_{r}"
    return out


def left_derivative_shapes_ok(wq: WordQuiver, P: QP) -> bool:
    """Each term of ``d_a W`` for a left arrow ``a`` is left path, right arrow, star arrow, left path."""
    from .paths import cyclic_derivative

    for a in P.quiver.arrows:
        if wq.kinds[a.name][0] != "left":
            continue
        for (_, p), _c in cyclic_derivative(a.name, P.potential).terms.items():
            kinds = [wq.kinds[x][0] for x in p]
            rights = [n for n, k in enumerate(kinds) if k == "right"]
            if len(rights) != 2 or rights[1] != rights[0] + 1:
                return False
            b, bs = p[rights[0]], p[rights[1]]
            if wq.kinds[bs][1] != star(wq.kinds[b][1]):
                return False
    return True
