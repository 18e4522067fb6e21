"""Truncated elements of the complete path algebra.

A path is keyed by ``(start_vertex, arrow_names)``; ``(v, ())`` is the
trivial path at ``v``.  Composition is left to right: the path ``("1", ("a",
"b"))`` means first ``a`` and then ``b``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import PreconditionError, StructuralError
from .linalg import Matrix, fraction_str, to_fraction
from .quiver import Quiver

PathKey = tuple  # (start vertex, tuple of arrow names)


def path_end(Q: Quiver, key: PathKey) -> str:
    s, p = key
    return Q.target(p[-1]) if p else s


def is_cycle(Q: Quiver, key: PathKey) -> bool:
    return path_end(Q, key) == key[0]


def check_path(Q: Quiver, names: Iterable[str], start: str | None = None) -> PathKey:
    names = tuple(names)
    if not names:
        if start is None or not Q.has_vertex(start):
            raise StructuralError("a trivial path needs a declared vertex")
        return (start, ())
    for x, y in zip(names, names[1:]):
        if Q.target(x) != Q.source(y):
            raise StructuralError(f"arrows {x!r} and {y!r} are not composable")
    s = Q.source(names[0])
    if start is not None and start != s:
        raise StructuralError(f"path {names} does not start at {start!r}")
    return (s, names)


def canonical_rotation(Q: Quiver, key: PathKey) -> PathKey:
    """Lexicographically least rotation of a cycle (trivial paths are fixed)."""
    s, p = key
    if not p:
        return key
    best = min(p[i:] + p[:i] for i in range(len(p)))
    return (Q.source(best[0]), best)


class TruncatedElement:
    """Rational linear combination of paths of length at most ``N``."""

    __slots__ = ("quiver", "N", "terms")

    def __init__(self, quiver: Quiver, N: int, terms: Mapping | None = None):
        if N < 1:
            raise StructuralError("truncation degree must be positive")
        self.quiver = quiver
        self.N = N
        self.terms: dict = {}
        if terms:
            for k, c in terms.items():
                c = to_fraction(c)
                if c and len(k[1]) <= N:
                    self.terms[k] = self.terms.get(k, 0) + c
            self.terms = {k: c for k, c in self.terms.items() if c}

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, Q: Quiver, N: int) -> "TruncatedElement":
        return cls(Q, N)

    @classmethod
    def vertex(cls, Q: Quiver, N: int, v: str, coeff=1) -> "TruncatedElement":
        return cls(Q, N, {check_path(Q, (), v): coeff})

    @classmethod
    def path(cls, Q: Quiver, N: int, names: Iterable[str], coeff=1) -> "TruncatedElement":
        return cls(Q, N, {check_path(Q, names): coeff})

    @classmethod
    def from_terms(cls, Q: Quiver, N: int, items: Iterable) -> "TruncatedElement":
        """Build from ``(coeff, names)`` pairs; names may be a space separated string."""
        out: dict = {}
        for c, names in items:
            if isinstance(names, str):
                names = names.split()
            k = check_path(Q, names)
            out[k] = out.get(k, 0) + to_fraction(c)
        return cls(Q, N, out)

    def _wrap(self, terms: dict) -> "TruncatedElement":
        out = TruncatedElement.__new__(TruncatedElement)
        out.quiver, out.N = self.quiver, self.N
        out.terms = {k: c for k, c in terms.items() if c and len(k[1]) <= self.N}
        return out

    def _check_same(self, other: "TruncatedElement") -> None:
        if self.N != other.N:
            raise StructuralError(f"truncation mismatch: {self.N} vs {other.N}")
        if self.quiver is not other.quiver and self.quiver != other.quiver:
            raise StructuralError("elements live over different quivers")

    def with_truncation(self, N: int) -> "TruncatedElement":
        return TruncatedElement(self.quiver, N, self.terms)

    def over(self, Q: Quiver) -> "TruncatedElement":
        """Same element viewed over another quiver containing all its arrows."""
        for s, p in self.terms:
            check_path(Q, p, s)
        return TruncatedElement(Q, self.N, self.terms)

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other: "TruncatedElement") -> "TruncatedElement":
        self._check_same(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return self._wrap(t)

    def __sub__(self, other: "TruncatedElement") -> "TruncatedElement":
        return self + (-other)

    def __neg__(self) -> "TruncatedElement":
        return self._wrap({k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "TruncatedElement":
        c = to_fraction(c)
        return self._wrap({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "TruncatedElement") -> "TruncatedElement":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedElement):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection ------------------------------------------------------------------
    def degree_part(self, lo: int, hi: int | None = None) -> "TruncatedElement":
        hi = lo if hi is None else hi
        return self._wrap({k: c for k, c in self.terms.items() if lo <= len(k[1]) <= hi})

    def min_degree(self) -> int | None:
        return min((len(k[1]) for k in self.terms), default=None)

    def constant_part(self) -> "TruncatedElement":
        return self.degree_part(0)

    def arrows_used(self) -> set[str]:
        return {a for (_, p) in self.terms for a in p}

    def is_basic(self) -> bool:
        ends = {(k[0], path_end(self.quiver, k)) for k in self.terms}
        return len(ends) <= 1

    def endpoints(self) -> set[tuple[str, str]]:
        return {(k[0], path_end(self.quiver, k)) for k in self.terms}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0]))

    def __repr__(self) -> str:
        return f"TruncatedElement(N={self.N}: {format_element(self)})"


def format_element(x: TruncatedElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for (s, p), c in x.sorted_terms():
        mono = "".join(p) if p else f"e_{s}"
        if len(p) > 1 and any(len(a) > 1 for a in p):
            mono = "·".join(p)
        if c == 1:
            parts.append(f"+ {mono}")
        elif c == -1:
            parts.append(f"- {mono}")
        elif c > 0:
            parts.append(f"+ {fraction_str(c)} {mono}")
        else:
            parts.append(f"- {fraction_str(-c)} {mono}")
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def multiply(x: TruncatedElement, y: TruncatedElement) -> TruncatedElement:
    x._check_same(y)
    Q, N = x.quiver, x.N
    by_start: dict = {}
    for k, c in y.terms.items():
        by_start.setdefault(k[0], []).append((k[1], c))
    out: dict = {}
    for (s1, p1), c1 in x.terms.items():
        e1 = path_end(Q, (s1, p1))
        room = N - len(p1)
        for p2, c2 in by_start.get(e1, ()):
            if len(p2) <= room:
                k = (s1, p1 + p2)
                out[k] = out.get(k, 0) + c1 * c2
    return x._wrap(out)


def _require_no_constant(x: TruncatedElement) -> None:
    if any(not p for (_, p) in x.terms):
        raise PreconditionError("element has a nonzero constant part")


def right_derivative(a: str, x: TruncatedElement) -> TruncatedElement:
    """Strip a final ``a``: the unique ``y`` with ``x = sum_a y_a a``."""
    _require_no_constant(x)
    x.quiver.arrow(a)
    out: dict = {}
    for (s, p), c in x.terms.items():
        if p[-1] == a:
            out[(s, p[:-1])] = out.get((s, p[:-1]), 0) + c
    return x._wrap(out)


def left_derivative(a: str, x: TruncatedElement) -> TruncatedElement:
    _require_no_constant(x)
    Q = x.quiver
    t = Q.target(a)
    out: dict = {}
    for (s, p), c in x.terms.items():
        if p[0] == a:
            out[(t, p[1:])] = out.get((t, p[1:]), 0) + c
    return x._wrap(out)


def _require_cycles(W: TruncatedElement) -> None:
    for k in W.terms:
        if not is_cycle(W.quiver, k):
            raise PreconditionError(f"term {k[1]} is not a cycle")


def cyclic_derivative(a: str, W: TruncatedElement) -> TruncatedElement:
    _require_cycles(W)
    Q = W.quiver
    t = Q.target(a)
    out: dict = {}
    for (s, p), c in W.terms.items():
        for i, x in enumerate(p):
            if x == a:
                k = (t, p[i + 1:] + p[:i])
                out[k] = out.get(k, 0) + c
    return W._wrap(out)


def second_derivative(a: str, b: str, W: TruncatedElement) -> TruncatedElement:
    """Sum over cyclically adjacent occurrences ``... a b ...`` of the remaining cycle.

    The pair formed by the last and first arrow of a cycle counts as adjacent.
    """
    _require_cycles(W)
    Q = W.quiver
    if Q.target(a) != Q.source(b):
        return W._wrap({})
    t = Q.target(b)
    out: dict = {}
    for (s, p), c in W.terms.items():
        m = len(p)
        for i in range(m):
            if p[i] == a and p[(i + 1) % m] == b:
                rest = tuple(p[(i + 2 + r) % m] for r in range(m - 2))
                k = (t, rest)
                out[k] = out.get(k, 0) + c
    return W._wrap(out)


def cyclic_normal_form(W: TruncatedElement) -> TruncatedElement:
    _require_cycles(W)
    Q = W.quiver
    out: dict = {}
    for k, c in W.terms.items():
        r = canonical_rotation(Q, k)
        out[r] = out.get(r, 0) + c
    return W._wrap(out)


def cyclic_class_project(x: TruncatedElement) -> dict:
    """Coordinates of ``x`` modulo commutators: non-cycles vanish, cycles go to their class."""
    Q = x.quiver
    out: dict = {}
    for k, c in x.terms.items():
        if is_cycle(Q, k):
            r = canonical_rotation(Q, k)
            out[r] = out.get(r, 0) + c
    return {k: c for k, c in out.items() if c}


def cycle_classes(Q: Quiver, lo: int, hi: int) -> list[PathKey]:
    """All canonical cycle classes of length ``lo..hi`` (``lo >= 1``)."""
    out = set()
    for key in enumerate_paths(Q, hi):
        if len(key[1]) >= max(lo, 1) and is_cycle(Q, key):
            out.add(canonical_rotation(Q, key))
    return sorted(out, key=lambda k: (len(k[1]), k[1]))


def enumerate_paths(Q: Quiver, max_len: int, start: str | None = None) -> list[PathKey]:
    """Paths of length ``0..max_len`` in breadth-first order."""
    layer = [(v, ()) for v in Q.vertices if start is None or v == start]
    out = list(layer)
    for _ in range(max_len):
        nxt = []
        for k in layer:
            e = path_end(Q, k)
            for a in Q.arrows_from(e):
                nxt.append((k[0], k[1] + (a.name,)))
        out.extend(nxt)
        layer = nxt
        if not layer:
            break
    return out


class Substitution:
    """Continuous algebra morphism sending each arrow to a truncated element.

    Vertices are fixed, so source and target quivers share vertex ids.  The
    image of every arrow must be basic with the arrow's endpoints and have no
    constant term.
    """

    def __init__(self, source: Quiver, target: Quiver, N: int,
                 images: Mapping[str, TruncatedElement] | None = None):
        self.source, self.target, self.N = source, target, N
        if set(source.vertices) != set(target.vertices):
            raise StructuralError("substitution must fix the vertex set")
        imgs: dict[str, TruncatedElement] = {}
        given = dict(images or {})
        for a in source.arrows:
            if a.name in given:
                img = given.pop(a.name)
                if img.N != N:
                    raise StructuralError(f"image of {a.name!r} has truncation {img.N}, expected {N}")
                img = img if img.quiver is target else img.over(target)
                for (s, p) in img.terms:
                    if not p:
                        raise StructuralError(f"image of {a.name!r} has a constant part")
                    if s != a.source or path_end(target, (s, p)) != a.target:
                        raise StructuralError(f"image of {a.name!r} has mismatched endpoints")
                imgs[a.name] = img
            else:
                if not target.has_arrow(a.name):
                    raise StructuralError(f"no image given for arrow {a.name!r}")
                ta = target.arrow(a.name)
                if (ta.source, ta.target) != (a.source, a.target):
                    raise StructuralError(f"arrow {a.name!r} changes endpoints")
                imgs[a.name] = TruncatedElement.path(target, N, [a.name])
        if given:
            raise StructuralError(f"images for unknown arrows: {sorted(given)}")
        self.images = imgs

    @classmethod
    def identity(cls, Q: Quiver, N: int) -> "Substitution":
        return cls(Q, Q, N)

    def __call__(self, x: TruncatedElement) -> TruncatedElement:
        return substitute(self, x)

    def image(self, a: str) -> TruncatedElement:
        return self.images[a]

    def is_identity(self) -> bool:
        return all(img.terms == {(self.source.source(a), (a,)): 1} for a, img in self.images.items())

    def compose(self, then: "Substitution") -> "Substitution":
        """``a -> then(self(a))``."""
        if self.N != then.N:
            raise StructuralError("truncation mismatch in composition")
        return Substitution(self.source, then.target, self.N,
                            {a: then(img) for a, img in self.images.items()})

    def linear_part(self) -> dict:
        """Coefficient table ``{(a, c): coeff}`` of each target arrow ``c`` in ``self(a)``."""
        out = {}
        for a, img in self.images.items():
            for (s, p), c in img.terms.items():
                if len(p) == 1:
                    out[(a, p[0])] = c
        return out

    def inverse(self) -> "Substitution":
        """Inverse morphism, exact up to the truncation degree."""
        src, tgt, N = self.source, self.target, self.N
        lin = self.linear_part()
        psi0: dict[str, TruncatedElement] = {}
        blocks: dict = {}
        for a in src.arrows:
            blocks.setdefault((a.source, a.target), [[], []])[0].append(a.name)
        for c in tgt.arrows:
            blocks.setdefault((c.source, c.target), [[], []])[1].append(c.name)
        for (i, j), (A, C) in blocks.items():
            if len(A) != len(C):
                raise StructuralError(f"linear part is not invertible between {i!r} and {j!r}")
            if not A:
                continue
            M = Matrix([[lin.get((a, c), 0) for c in C] for a in A])
            if M.det() == 0:
                raise StructuralError(f"linear part is singular between {i!r} and {j!r}")
            Minv = M.inverse()
            # self(a) = sum_c M[a,c] c  =>  c = sum_a Minv[c,a] self(a)
            for ci, c in enumerate(C):
                psi0[c] = TruncatedElement(src, N, {(i, (a,)): Minv[ci, ai] for ai, a in enumerate(A)})
        lin_inv = Substitution(tgt, src, N, psi0)
        psi = dict(psi0)
        for _ in range(N + 1):
            cur = Substitution(tgt, src, N, psi)
            err = {c: self(cur.images[c]) - TruncatedElement.path(tgt, N, [c]) for c in psi}
            if all(e.is_zero() for e in err.values()):
                return cur
            psi = {c: psi[c] - lin_inv(err[c]) for c in psi}
        raise StructuralError("inverse iteration did not converge")  # pragma: no cover

    def to_terms(self) -> dict:
        return {a: img for a, img in self.images.items()}


def substitute(phi: Substitution, x: TruncatedElement) -> TruncatedElement:
    if x.N != phi.N:
        raise StructuralError(f"truncation mismatch: {x.N} vs {phi.N}")
    Q = phi.target
    N = phi.N
    out: dict = {}
    imgs = phi.images
    # Expand monomials, sharing work between common prefixes.
    cache: dict[tuple, dict] = {}

    def expand(s: str, p: tuple) -> dict:
        if not p:
            return {(s, ()): Fraction(1)}
        hit = cache.get(p)
        if hit is not None:
            return hit
        head = expand(s, p[:-1])
        last = imgs[p[-1]].terms
        res: dict = {}
        for (s1, q1), c1 in head.items():
            room = N - len(q1)
            for (s2, q2), c2 in last.items():
                if len(q2) <= room:
                    k = (s1, q1 + q2)
                    res[k] = res.get(k, 0) + c1 * c2
        res = {k: c for k, c in res.items() if c}
        cache[p] = res
        return res

    for (s, p), c in x.terms.items():
        if p and p[0] not in imgs:
            raise StructuralError(f"arrow {p[0]!r} is not in the substitution's source")
        for k, v in expand(s, p).items():
            out[k] = out.get(k, 0) + c * v
    res = TruncatedElement.__new__(TruncatedElement)
    res.quiver, res.N = Q, N
    res.terms = {k: c for k, c in out.items() if c}
    return res
