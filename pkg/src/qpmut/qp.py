"""Quivers with potentials: premutation, reduction and mutation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import PreconditionError, StructuralError
from .paths import (
    Substitution,
    TruncatedElement,
    canonical_rotation,
    cyclic_normal_form,
    format_element,
    is_cycle,
    path_end,
)
from .quiver import Arrow, Quiver, premutation_quiver, star

DEFAULT_TRUNCATION = 12


class QP:
    """Quiver with potential, optional frozen vertices, and a truncation degree.

    The constructor normalizes the potential when it is supported on cycles;
    anything else is kept verbatim so that :func:`validate_qp` can report it.
    """

    def __init__(self, quiver: Quiver, potential: TruncatedElement | None = None,
                 frozen: Iterable[str] = (), truncation: int = DEFAULT_TRUNCATION):
        self.quiver = quiver
        self.N = truncation
        if potential is None:
            potential = TruncatedElement.zero(quiver, truncation)
        if potential.N != truncation:
            potential = potential.with_truncation(truncation)
        if potential.quiver is not quiver:
            potential = potential.over(quiver)
        if all(is_cycle(quiver, k) for k in potential.terms):
            potential = cyclic_normal_form(potential)
        self.potential = potential
        self.frozen = frozenset(frozen)

    @classmethod
    def from_terms(cls, quiver: Quiver, terms, frozen=(), truncation=DEFAULT_TRUNCATION) -> "QP":
        return cls(quiver, TruncatedElement.from_terms(quiver, truncation, terms), frozen, truncation)

    @property
    def W(self) -> TruncatedElement:
        return self.potential

    def is_reduced(self) -> bool:
        return all(len(p) >= 3 for (_, p) in self.potential.terms)

    def with_truncation(self, N: int) -> "QP":
        return QP(self.quiver, self.potential.with_truncation(N), self.frozen, N)

    def __repr__(self) -> str:
        fr = f", frozen={sorted(self.frozen)}" if self.frozen else ""
        return f"QP({self.quiver!r}, W={format_element(self.potential)}{fr}, N={self.N})"


# validation -----------------------------------------------------------------

@dataclass
class ValidationReport:
    valid: bool
    reduced: bool
    errors: list[str] = field(default_factory=list)
    two_cycles: dict[str, list[list[str]]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"valid": self.valid, "reduced": self.reduced, "errors": self.errors,
                "two_cycles": self.two_cycles}


def validate_qp(P: QP) -> ValidationReport:
    Q = P.quiver
    errors = []
    for a in Q.loops():
        errors.append(f"loop {a.name} at vertex {a.source}")
    for (s, p), c in P.potential.sorted_terms():
        if not is_cycle(Q, (s, p)):
            errors.append(f"term {' '.join(p) or 'e_' + s} is not a cycle")
        elif len(p) < 2:
            errors.append(f"term {' '.join(p) or 'e_' + s} has length {len(p)} < 2")
        elif canonical_rotation(Q, (s, p)) != (s, p):
            errors.append(f"term {' '.join(p)} is not in cyclic normal form")
    for v in sorted(P.frozen - set(Q.vertices)):
        errors.append(f"frozen vertex {v} is not a vertex of the quiver")
    twos = {v: [list(t) for t in Q.two_cycles(through=v)] for v in Q.vertices}
    reduced = not errors and P.is_reduced()
    return ValidationReport(not errors, reduced, errors, {v: t for v, t in twos.items() if t})


def _require_valid(P: QP) -> None:
    rep = validate_qp(P)
    if not rep.valid:
        raise StructuralError("; ".join(rep.errors))


# premutation -------------------------------------------------------------------

def _rotation_avoiding(Q: Quiver, key, k: str):
    s, p = key
    options = [p[i:] + p[:i] for i in range(len(p)) if Q.source(p[i]) != k]
    if not options:
        raise PreconditionError(f"cycle {p} only visits vertex {k!r}")
    best = min(options)
    return (Q.source(best[0]), best)


def normalize_avoid_vertex(P: QP, k: str) -> TruncatedElement:
    """Rotate each cycle of the potential so that it does not start at ``k``.

    Returns the rotated potential (deliberately not in cyclic normal form).
    Cycles that already avoid starting at ``k`` are kept as they are.
    """
    Q = P.quiver
    if any(a.source == k for a in Q.loops()):
        raise PreconditionError(f"loop at vertex {k!r}")
    out: dict = {}
    for key, c in P.potential.terms.items():
        if key[1] and key[0] == k:
            key = _rotation_avoiding(Q, key, k)
        out[key] = out.get(key, 0) + c
    return TruncatedElement(Q, P.N, out)


@dataclass
class PremutationResult:
    qp: QP
    new_vertex: str
    reversed: dict[str, str]
    composites: dict[tuple[str, str], str]


def premutate_full(P: QP, k: str) -> PremutationResult:
    _require_valid(P)
    if k in P.frozen:
        raise PreconditionError(f"vertex {k!r} is frozen")
    Q = P.quiver
    data = premutation_quiver(Q, k)
    Q2 = data.quiver
    rotated = normalize_avoid_vertex(P, k)
    N = P.N
    terms: dict = {}
    for (s, p), c in rotated.terms.items():
        out = []
        i = 0
        while i < len(p):
            if Q.target(p[i]) == k:
                # start is not k, so the cycle cannot end inside this pair
                out.append(data.composites[(p[i], p[i + 1])])
                i += 2
            else:
                out.append(p[i])
                i += 1
        key = (s, tuple(out))
        terms[key] = terms.get(key, 0) + c
    bracket = TruncatedElement(Q2, N, terms)
    delta: dict = {}
    for (a, b), ab in data.composites.items():
        key = (data.new_vertex, (data.reversed[a], ab, data.reversed[b]))
        delta[key] = delta.get(key, 0) + 1
    W2 = bracket + TruncatedElement(Q2, N, delta)
    frozen = {data.new_vertex if v == k else v for v in P.frozen}
    return PremutationResult(QP(Q2, W2, frozen, N), data.new_vertex, data.reversed, data.composites)


def premutate(P: QP, k: str) -> QP:
    return premutate_full(P, k).qp


# reduction -----------------------------------------------------------------------

@dataclass
class SplitResult:
    reduced: QP
    trivial_pairs: list[tuple[str, str]]
    equivalence: Substitution
    trivial_potential: TruncatedElement

    def check(self, original: QP) -> bool:
        """Exact check that the equivalence carries ``W`` to ``W_triv + W_red``."""
        lhs = cyclic_normal_form(self.equivalence(original.potential))
        rhs = self.trivial_potential + self.reduced.potential.over(original.quiver)
        return lhs == cyclic_normal_form(rhs)


def _linear_pairing(Q: Quiver, W: TruncatedElement, N: int):
    """Pair off degree-2 terms by rational elimination.

    Returns the accumulated substitution, the transformed potential and the
    trivial pairs ``(a, b)``; afterwards the degree-2 part is exactly
    ``sum a b`` over the pairs.
    """
    phi = Substitution.identity(Q, N)
    pairs: list[tuple[str, str]] = []
    chosen: set[str] = set()
    while True:
        W2 = W.degree_part(2)
        pivot = None
        for (s, (x, y)), c in sorted(W2.terms.items(), key=lambda kv: kv[0][1]):
            if x not in chosen and y not in chosen:
                pivot = (x, y, c)
                break
        if pivot is None:
            break
        x, y, c = pivot
        ax, ay = Q.arrow(x), Q.arrow(y)
        A = [a.name for a in Q.arrows_between(ax.source, ax.target) if a.name not in chosen]
        B = [b.name for b in Q.arrows_between(ay.source, ay.target) if b.name not in chosen]

        def coeff(u: str, v: str) -> Fraction:
            key = canonical_rotation(Q, (Q.source(u), (u, v)))
            return W2.terms.get(key, Fraction(0))

        imgs = {}
        # y := (y - sum_{t != y} C[x,t] t) / c ;  x := x - sum_{s != x} (C[s,y] / c) s
        iy = {(ay.source, (y,)): Fraction(1)}
        for t in B:
            if t != y and coeff(x, t):
                iy[(ay.source, (t,))] = -coeff(x, t)
        imgs[y] = TruncatedElement(Q, N, iy).scale(1 / c)
        ix = {(ax.source, (x,)): Fraction(1)}
        for s_ in A:
            if s_ != x and coeff(s_, y):
                ix[(ax.source, (s_,))] = -coeff(s_, y) / c
        imgs[x] = TruncatedElement(Q, N, ix)
        step = Substitution(Q, Q, N, imgs)
        W = cyclic_normal_form(step(W))
        phi = phi.compose(step)
        pairs.append((x, y))
        chosen.update((x, y))
    return phi, W, pairs


def _cleanup(Q: Quiver, W: TruncatedElement, N: int, pairs):
    """Remove every monomial mixing trivial arrows with anything else."""
    phi = Substitution.identity(Q, N)
    a_side = {a: i for i, (a, b) in enumerate(pairs)}
    b_side = {b: i for i, (a, b) in enumerate(pairs)}
    trivial_terms = {canonical_rotation(Q, (Q.source(a), (a, b))) for a, b in pairs}
    for _ in range(N + 2):
        u: dict[int, dict] = {}
        v: dict[int, dict] = {}
        dirty = False
        for (s, p), c in W.terms.items():
            if (s, p) in trivial_terms:
                continue
            pos = next((i for i, x in enumerate(p) if x in a_side or x in b_side), None)
            if pos is None:
                continue
            dirty = True
            x = p[pos]
            rot = p[pos:] + p[:pos]
            rest = rot[1:]
            if x in a_side:
                key = (Q.target(x), rest)
                d = u.setdefault(a_side[x], {})
            else:
                key = (Q.target(x), rest)
                d = v.setdefault(b_side[x], {})
            d[key] = d.get(key, 0) + c
        if not dirty:
            return phi, W
        imgs = {}
        for i, (a, b) in enumerate(pairs):
            if i in v:
                imgs[a] = TruncatedElement.path(Q, N, [a]) - TruncatedElement(Q, N, v[i])
            if i in u:
                imgs[b] = TruncatedElement.path(Q, N, [b]) - TruncatedElement(Q, N, u[i])
        step = Substitution(Q, Q, N, imgs)
        W = cyclic_normal_form(step(W))
        phi = phi.compose(step)
    raise StructuralError("reduction did not stabilize")  # pragma: no cover


def split_reduce(P: QP) -> SplitResult:
    """Split ``P`` into a trivial part and a reduced part up to right-equivalence.

    The degree-2 part is diagonalized first, then monomials touching the
    trivial arrows are pushed out by substitutions whose error terms have
    strictly increasing degree, so the loop ends once that degree exceeds N.
    """
    _require_valid(P)
    Q, N = P.quiver, P.N
    phi1, W, pairs = _linear_pairing(Q, P.potential, N)
    phi2, W = _cleanup(Q, W, N, pairs)
    phi = phi1.compose(phi2)
    trivial = {a for pr in pairs for a in pr}
    triv_terms = {}
    for a, b in pairs:
        triv_terms[canonical_rotation(Q, (Q.source(a), (a, b)))] = Fraction(1)
    W_triv = TruncatedElement(Q, N, triv_terms)
    rest = W - W_triv
    Qred = Quiver(Q.vertices, [a for a in Q.arrows if a.name not in trivial])
    if rest.arrows_used() & trivial:
        raise StructuralError("reduction left trivial arrows in the potential")  # pragma: no cover
    reduced = QP(Qred, TruncatedElement(Qred, N, rest.terms), P.frozen, N)
    return SplitResult(reduced, pairs, phi, W_triv)


def mutate_full(P: QP, k: str) -> tuple[QP, Substitution, PremutationResult, SplitResult]:
    pre = premutate_full(P, k)
    split = split_reduce(pre.qp)
    return split.reduced, split.equivalence, pre, split


def mutate(P: QP, k: str) -> tuple[QP, Substitution]:
    """Premutate at ``k`` and reduce.

    The returned substitution goes from the premutated quiver to itself and
    carries the premutated potential to trivial part plus reduced part.
    """
    if not P.is_reduced():
        P = split_reduce(P).reduced
    red, phi, _, _ = mutate_full(P, k)
    return red, phi


def is_rigid_truncated(P: QP):
    from .jacobian import rigidity_verdict

    return rigidity_verdict(P)
