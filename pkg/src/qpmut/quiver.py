"""Quivers, b-matrices and Fomin-Zelevinsky mutation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, StructuralError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


def star(name: str) -> str:
    """Name of the reversed arrow (or vertex); ``x**`` collapses to ``x``."""
    return name[:-1] if name.endswith("*") else name + "*"


def composite_name(a: str, b: str) -> str:
    return "[" + a + b + "]"


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


class Quiver:
    """Finite directed multigraph with named vertices and arrows.

    Vertices keep their declaration order and arrows keep theirs; every
    derived construction is deterministic with respect to these orders.
    """

    def __init__(self, vertices: Iterable[str], arrows: Iterable = ()):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise StructuralError("duplicate vertex identifiers")
        arr = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*(str(x) for x in a))
            arr.append(a)
        self.arrows: tuple[Arrow, ...] = tuple(arr)
        self._by_name = {}
        vs = set(self.vertices)
        for a in self.arrows:
            if a.name in self._by_name:
                raise StructuralError(f"duplicate arrow name {a.name!r}")
            if a.source not in vs or a.target not in vs:
                raise StructuralError(f"arrow {a.name!r} has an undeclared endpoint")
            self._by_name[a.name] = a
        self._vindex = {v: i for i, v in enumerate(self.vertices)}

    # lookup -------------------------------------------------------------
    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise StructuralError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def vertex_index(self, v: str) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise StructuralError(f"unknown vertex {v!r}") from None

    def source(self, name: str) -> str:
        return self.arrow(name).source

    def target(self, name: str) -> str:
        return self.arrow(name).target

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def arrows_between(self, i: str, j: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == i and a.target == j]

    def count(self, i: str, j: str) -> int:
        return sum(1 for a in self.arrows if a.source == i and a.target == j)

    # predicates -----------------------------------------------------------
    def loops(self) -> list[Arrow]:
        return [a for a in self.arrows if a.source == a.target]

    def has_loops(self) -> bool:
        return bool(self.loops())

    def two_cycles(self, through: str | None = None) -> list[tuple[str, str]]:
        """Pairs of arrow names forming 2-cycles, optionally only those touching a vertex."""
        out = []
        arr = self.arrows
        for x, a in enumerate(arr):
            for b in arr[x + 1:]:
                if a.source == b.target and a.target == b.source and a.source != a.target:
                    if through is None or through in (a.source, a.target):
                        out.append((a.name, b.name))
        return out

    def check_no_loops(self) -> None:
        if self.has_loops():
            raise StructuralError(f"quiver has loops: {[a.name for a in self.loops()]}")

    # misc ---------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arr})"

    def without_vertices(self, drop: Iterable[str]) -> "Quiver":
        drop = set(drop)
        return Quiver([v for v in self.vertices if v not in drop],
                      [a for a in self.arrows if a.source not in drop and a.target not in drop])

    def renamed(self, vertices: Mapping[str, str] | None = None,
                arrows: Mapping[str, str] | None = None) -> "Quiver":
        vm = vertices or {}
        am = arrows or {}
        return Quiver([vm.get(v, v) for v in self.vertices],
                      [Arrow(am.get(a.name, a.name), vm.get(a.source, a.source),
                             vm.get(a.target, a.target)) for a in self.arrows])

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])


def b_matrix(Q: Quiver) -> list[list[int]]:
    Q.check_no_loops()
    n = len(Q.vertices)
    B = [[0] * n for _ in range(n)]
    for a in Q.arrows:
        i, j = Q.vertex_index(a.source), Q.vertex_index(a.target)
        B[i][j] += 1
        B[j][i] -= 1
    return B


def fz_formula(B: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Matrix mutation rule applied directly to an antisymmetric matrix."""
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


@dataclass
class PremutationData:
    """Bookkeeping produced by reversing arrows at k and adding composites."""

    quiver: Quiver
    new_vertex: str
    reversed: dict[str, str]                 # old arrow name -> reversed arrow name
    composites: dict[tuple[str, str], str]   # (a, b) through k -> composite name
    kept: dict[str, str]                     # arrows away from k, old name -> new name


def premutation_quiver(Q: Quiver, k: str) -> PremutationData:
    """Quiver with composites ``[ab]`` added and the arrows at ``k`` reversed.

    No 2-cycles are removed here; see :func:`fz_mutate` for that step.
    """
    Q.check_no_loops()
    if not Q.has_vertex(k):
        raise StructuralError(f"unknown vertex {k!r}")
    if Q.two_cycles(through=k):
        raise PreconditionError(f"2-cycle through vertex {k!r}: {Q.two_cycles(through=k)}")
    kk = star(k)
    if kk in Q.vertices and kk != k:
        kk = _fresh(kk, set(Q.vertices))
    vmap = {v: (kk if v == k else v) for v in Q.vertices}
    incoming = Q.arrows_to(k)
    outgoing = Q.arrows_from(k)

    taken: set[str] = set()
    kept: dict[str, str] = {}
    for a in Q.arrows:
        if a.source != k and a.target != k:
            kept[a.name] = a.name
            taken.add(a.name)
    reversed_: dict[str, str] = {}
    for a in Q.arrows:
        if a.source == k or a.target == k:
            nm = _fresh(star(a.name), taken)
            reversed_[a.name] = nm
            taken.add(nm)
    composites: dict[tuple[str, str], str] = {}
    for a in incoming:
        for b in outgoing:
            nm = _fresh(composite_name(a.name, b.name), taken)
            composites[(a.name, b.name)] = nm
            taken.add(nm)

    arrows = []
    for a in Q.arrows:
        if a.name in kept:
            arrows.append(Arrow(a.name, a.source, a.target))
    for a in incoming:
        for b in outgoing:
            arrows.append(Arrow(composites[(a.name, b.name)], a.source, b.target))
    for a in Q.arrows:
        if a.name in reversed_:
            arrows.append(Arrow(reversed_[a.name], vmap[a.target], vmap[a.source]))
    return PremutationData(Quiver([vmap[v] for v in Q.vertices], arrows), kk,
                           reversed_, composites, kept)


def fz_mutate(Q: Quiver, k: str) -> Quiver:
    """Fomin-Zelevinsky mutation at ``k``.

    Each composite ``[ab]: i -> j`` is cancelled against an old arrow ``j -> i``
    while such arrows remain (old arrows and composites in declaration order).
    Other 2-cycles, not created by the mutation, are left alone.
    """
    data = premutation_quiver(Q, k)
    comp_names = list(data.composites.values())
    P = data.quiver
    drop: set[str] = set()
    for c in comp_names:
        ca = P.arrow(c)
        for a in P.arrows:
            if (a.name in data.kept and a.name not in drop
                    and a.source == ca.target and a.target == ca.source):
                drop.add(a.name)
                drop.add(c)
                break
    return Quiver(P.vertices, [a for a in P.arrows if a.name not in drop])


def quivers_isomorphic(Q1: Quiver, Q2: Quiver) -> dict | None:
    """Find a vertex and arrow bijection ``Q1 -> Q2`` preserving endpoints.

    Returns ``{"vertices": {...}, "arrows": {...}}`` or ``None``.  Parallel
    arrows are matched in declaration order.
    """
    if len(Q1.vertices) != len(Q2.vertices) or len(Q1.arrows) != len(Q2.arrows):
        return None

    def sig(Q, v):
        return (len(Q.arrows_from(v)), len(Q.arrows_to(v)),
                sum(1 for a in Q.arrows if a.source == v and a.target == v))

    V1, V2 = Q1.vertices, Q2.vertices
    sig1 = {v: sig(Q1, v) for v in V1}
    sig2 = {v: sig(Q2, v) for v in V2}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None
    # Most constrained vertices first.
    order = sorted(V1, key=lambda v: sum(1 for w in V1 if sig1[w] == sig1[v]))
    assign: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for u, x in assign.items():
            if Q1.count(v, u) != Q2.count(w, x) or Q1.count(u, v) != Q2.count(x, w):
                return False
        return Q1.count(v, v) == Q2.count(w, w)

    def search(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for w in V2:
            if w in used or sig2[w] != sig1[v] or not consistent(v, w):
                continue
            assign[v] = w
            used.add(w)
            if search(idx + 1):
                return True
            del assign[v]
            used.discard(w)
        return False

    if not search(0):
        return None
    amap: dict[str, str] = {}
    for i in V1:
        for j in V1:
            src = Q1.arrows_between(i, j)
            dst = Q2.arrows_between(assign[i], assign[j])
            for a, b in zip(src, dst):
                amap[a.name] = b.name
    return {"vertices": {v: assign[v] for v in V1}, "arrows": amap}


def brute_force_isomorphic(Q1: Quiver, Q2: Quiver) -> bool:
    """Exhaustive permutation check, used as a test oracle for small quivers."""
    if len(Q1.vertices) != len(Q2.vertices) or len(Q1.arrows) != len(Q2.arrows):
        return False
    for perm in permutations(Q2.vertices):
        m = dict(zip(Q1.vertices, perm))
        if all(Q1.count(i, j) == Q2.count(m[i], m[j]) for i in Q1.vertices for j in Q1.vertices):
            return True
    return False
