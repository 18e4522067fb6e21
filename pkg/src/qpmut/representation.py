"""Nilpotent representations of Jacobian algebras and their mutation.

Matrices act on row vectors: the map of an arrow ``a`` is a
``dim M_{s(a)} x dim M_{e(a)}`` matrix and a path ``a b`` acts as
``M_a @ M_b``.  All direct sums are ordered by the arrow order of the quiver.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PreconditionError, StructuralError
from .linalg import Matrix, complement, coordinates, intersect
from .paths import Substitution, TruncatedElement, cyclic_derivative, path_end, second_derivative
from .qp import QP, SplitResult, premutate_full, split_reduce
from .quiver import Quiver, quivers_isomorphic, star


class Representation:
    def __init__(self, quiver: Quiver, dims: Mapping[str, int], matrices: Mapping[str, Matrix] | None = None):
        self.quiver = quiver
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        extra = set(dims) - set(quiver.vertices)
        if extra:
            raise StructuralError(f"dimensions given for unknown vertices {sorted(extra)}")
        mats = dict(matrices or {})
        self.mats: dict[str, Matrix] = {}
        for a in quiver.arrows:
            shape = (self.dims[a.source], self.dims[a.target])
            m = mats.pop(a.name, None)
            if m is None:
                m = Matrix.zeros(*shape)
            elif not isinstance(m, Matrix):
                m = Matrix(m, shape[1])
            if m.shape != shape:
                raise StructuralError(f"matrix of {a.name} has shape {m.shape}, expected {shape}")
            self.mats[a.name] = m
        if mats:
            raise StructuralError(f"matrices given for unknown arrows {sorted(mats)}")

    # basic structure ------------------------------------------------------------
    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> dict[str, int]:
        return dict(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation) and self.quiver == other.quiver
                and self.dims == other.dims and self.mats == other.mats)

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    def path_matrix(self, key) -> Matrix:
        s, p = key
        out = Matrix.identity(self.dims[s])
        for a in p:
            out = out @ self.mats[a]
        return out

    def evaluate(self, x: TruncatedElement, source: str | None = None, target: str | None = None) -> Matrix:
        """Action of a basic element, as a ``dim M_source x dim M_target`` matrix."""
        Q = self.quiver
        ends = x.endpoints()
        if len(ends) > 1:
            raise StructuralError("can only evaluate basic elements")
        if ends:
            s, t = next(iter(ends))
            if (source is not None and s != source) or (target is not None and t != target):
                raise StructuralError("element endpoints do not match")
        else:
            if source is None or target is None:
                raise StructuralError("endpoints needed to evaluate zero")
            s, t = source, target
        out = Matrix.zeros(self.dims[s], self.dims[t])
        for key, c in x.terms.items():
            out = out + self.path_matrix(key).scale(c)
        del Q
        return out

    def nilpotency_bound(self) -> int | None:
        """Least ``L`` such that every path of length ``L`` acts as zero (``None`` if never)."""
        spaces = {v: Matrix.identity(d) for v, d in self.dims.items()}
        for L in range(self.total_dim + 1):
            if all(m.nrows == 0 for m in spaces.values()):
                return L
            nxt = {v: [] for v in self.dims}
            for a in self.quiver.arrows:
                img = spaces[a.source] @ self.mats[a.name]
                nxt[a.target].append(img)
            spaces = {v: (Matrix.vstack(rows, self.dims[v]).row_space() if rows
                          else Matrix.zeros(0, self.dims[v])) for v, rows in nxt.items()}
        return None

    def direct_sum(self, other: "Representation") -> "Representation":
        if self.quiver != other.quiver:
            raise StructuralError("direct sum needs a common quiver")
        dims = {v: self.dims[v] + other.dims[v] for v in self.dims}
        mats = {}
        for a in self.quiver.arrows:
            A, B = self.mats[a.name], other.mats[a.name]
            mats[a.name] = Matrix.block([[A, Matrix.zeros(A.nrows, B.ncols)],
                                         [Matrix.zeros(B.nrows, A.ncols), B]])
        return Representation(self.quiver, dims, mats)

    def base_change(self, g: Mapping[str, Matrix]) -> "Representation":
        """Conjugate by invertible ``g_v``: ``M_a -> g_{s(a)}^{-1} M_a g_{e(a)}``."""
        inv = {v: g[v].inverse() for v in self.dims}
        mats = {a.name: inv[a.source] @ self.mats[a.name] @ g[a.target] for a in self.quiver.arrows}
        return Representation(self.quiver, self.dims, mats)

    def over(self, Q: Quiver) -> "Representation":
        return Representation(Q, self.dims, self.mats)


def simple_rep(P: QP | Quiver, k: str) -> Representation:
    Q = P.quiver if isinstance(P, QP) else P
    if not Q.has_vertex(k):
        raise StructuralError(f"unknown vertex {k!r}")
    return Representation(Q, {v: (1 if v == k else 0) for v in Q.vertices})


def zero_rep(Q: Quiver) -> Representation:
    return Representation(Q, {})


# validation -------------------------------------------------------------------------

@dataclass
class RepReport:
    valid: bool
    nilpotency_bound: int | None
    residuals: dict[str, bool] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"valid": self.valid, "nilpotency_bound": self.nilpotency_bound,
                "nonzero_relations": sorted(a for a, ok in self.residuals.items() if not ok),
                "errors": self.errors}


def validate_rep(P: QP, M: Representation) -> RepReport:
    if M.quiver != P.quiver:
        raise StructuralError("representation and QP have different quivers")
    L = M.nilpotency_bound()
    if L is None:
        return RepReport(False, None, {}, ["representation is not nilpotent"])
    if L > P.N:
        raise PreconditionError(
            f"truncation N={P.N} is below the nilpotency bound {L}; raise --truncation")
    res = {}
    errors = []
    frozen = P.frozen
    for a in P.quiver.arrows:
        if a.source in frozen or a.target in frozen:
            continue
        d = cyclic_derivative(a.name, P.potential)
        ok = M.evaluate(d, a.target, a.source).is_zero()
        res[a.name] = ok
        if not ok:
            errors.append(f"relation d_{a.name} W does not vanish")
    return RepReport(not errors, L, res, errors)


def require_valid(P: QP, M: Representation) -> None:
    rep = validate_rep(P, M)
    if not rep.valid:
        raise PreconditionError("; ".join(rep.errors))


# the local data at a vertex ----------------------------------------------------------

def _order(n: int, strategy: int) -> list[int]:
    return list(range(n)) if strategy == 1 else list(reversed(range(n)))


def _block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.nrows for b in blocks)
    cols = sum(b.ncols for b in blocks)
    out = Matrix.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        for i in range(b.nrows):
            out.rows[r + i][c:c + b.ncols] = list(b.rows[i])
        r += b.nrows
        c += b.ncols
    return out


def _cols(M: Matrix, start: int, stop: int) -> Matrix:
    return M.submatrix(cols=range(start, stop))


def _rows(M: Matrix, start: int, stop: int) -> Matrix:
    return M.submatrix(rows=range(start, stop))


@dataclass
class VertexScaffold:
    k: str
    ins: list[str]              # arrows a_p ending at k
    outs: list[str]             # arrows b_q starting at k
    in_dims: list[int]          # dim M_{s(a_p)}
    out_dims: list[int]         # dim M_{e(b_q)}
    alpha: Matrix               # M_in -> M_k
    beta: Matrix                # M_k -> M_out
    gamma: Matrix               # M_out -> M_in
    im_beta: Matrix             # rows in M_out
    ker_gamma_compl: Matrix     # C: complement of Im beta inside Ker gamma
    ker_gamma_outer: Matrix     # complement of Ker gamma in M_out
    basis_out_inv: Matrix       # inverse of [Im beta; C; outer]
    im_gamma: Matrix            # G, rows in M_in
    gamma_coords: Matrix        # gamma in G coordinates
    ker_alpha_compl: Matrix     # E: complement of Im gamma inside Ker alpha
    rho_pi: Matrix              # M_out -> Ker gamma / Im beta
    strategy: int

    @property
    def dims3(self) -> tuple[int, int, int]:
        return (self.ker_gamma_compl.nrows, self.im_gamma.nrows, self.ker_alpha_compl.nrows)

    @property
    def alpha_tilde(self) -> Matrix:
        q1, g, e = self.dims3
        n_out = self.gamma.nrows
        return Matrix.hstack([-self.rho_pi, -self.gamma_coords, Matrix.zeros(n_out, e)], nrows=n_out)

    @property
    def beta_tilde(self) -> Matrix:
        q1, g, e = self.dims3
        n_in = self.gamma.ncols
        return Matrix.vstack([Matrix.zeros(q1, n_in), self.im_gamma, self.ker_alpha_compl], ncols=n_in)

    def ranks(self) -> dict:
        return {"ker_gamma": self.im_beta.nrows + self.ker_gamma_compl.nrows,
                "im_beta": self.im_beta.nrows, "im_gamma": self.im_gamma.nrows,
                "ker_alpha": self.im_gamma.nrows + self.ker_alpha_compl.nrows}


def vertex_scaffold(P: QP, M: Representation, k: str, strategy: int = 1,
                    check: bool = True) -> VertexScaffold:
    Q = P.quiver
    if check:
        require_valid(P, M)
    if any(a.source == k for a in Q.loops()):
        raise PreconditionError(f"loop at {k!r}")
    ins = [a.name for a in Q.arrows_to(k)]
    outs = [b.name for b in Q.arrows_from(k)]
    in_dims = [M.dims[Q.source(a)] for a in ins]
    out_dims = [M.dims[Q.target(b)] for b in outs]
    n_in, n_out, n_k = sum(in_dims), sum(out_dims), M.dims[k]
    alpha = Matrix.vstack([M.mats[a] for a in ins], ncols=n_k)
    beta = Matrix.hstack([M.mats[b] for b in outs], nrows=n_k)
    grid = []
    for b in outs:
        row = []
        for a in ins:
            d = second_derivative(a, b, P.potential)
            row.append(M.evaluate(d, Q.target(b), Q.source(a)))
        grid.append(row)
    if outs and ins:
        gamma = Matrix.block(grid)
    else:
        gamma = Matrix.zeros(n_out, n_in)
    if not (beta @ gamma).is_zero() or not (gamma @ alpha).is_zero():
        raise PreconditionError(f"relations fail at {k!r}: beta gamma or gamma alpha is nonzero")

    ker_g = gamma.left_kernel()
    im_b = beta.row_space(_order(n_out, strategy))
    cb = coordinates(ker_g, im_b) if im_b.nrows else Matrix.zeros(0, ker_g.nrows)
    C = complement(cb, _order(ker_g.nrows, strategy)) @ ker_g if ker_g.nrows else Matrix.zeros(0, n_out)
    inner = Matrix.vstack([im_b, C], ncols=n_out)
    outer = complement(inner, _order(n_out, strategy))
    B = Matrix.vstack([inner, outer], ncols=n_out)
    Binv = B.inverse()
    q0 = im_b.nrows
    rho_pi = _cols(Binv, q0, q0 + C.nrows)

    G = gamma.row_space(_order(n_in, strategy))
    gcoords = coordinates(G, gamma) if G.nrows else Matrix.zeros(n_out, 0)
    ker_a = alpha.left_kernel()
    cg = coordinates(ker_a, G) if G.nrows else Matrix.zeros(0, ker_a.nrows)
    E = complement(cg, _order(ker_a.nrows, strategy)) @ ker_a if ker_a.nrows else Matrix.zeros(0, n_in)
    return VertexScaffold(k, ins, outs, in_dims, out_dims, alpha, beta, gamma, im_b, C, outer,
                          Binv, G, gcoords, E, rho_pi, strategy)


# mutation of representations ----------------------------------------------------------

@dataclass
class MutatedRep:
    qp: QP                      # the premutated QP
    rep: Representation
    scaffold: VertexScaffold
    new_vertex: str
    summand_dims: tuple[int, int, int]


def mutate_rep_full(P: QP, M: Representation, k: str, strategy: int = 1) -> MutatedRep:
    pre = premutate_full(P, k)
    S = vertex_scaffold(P, M, k, strategy)
    Q, Q2 = P.quiver, pre.qp.quiver
    kk = pre.new_vertex
    dims = {(kk if v == k else v): d for v, d in M.dims.items()}
    dims[kk] = sum(S.dims3)
    mats: dict[str, Matrix] = {}
    for old, new in ((a.name, a.name) for a in Q.arrows if a.source != k and a.target != k):
        mats[new] = M.mats[old]
    for (a, b), ab in pre.composites.items():
        mats[ab] = M.mats[a] @ M.mats[b]
    at, bt = S.alpha_tilde, S.beta_tilde
    off = 0
    for b, d in zip(S.outs, S.out_dims):
        mats[pre.reversed[b]] = _rows(at, off, off + d)
        off += d
    off = 0
    for a, d in zip(S.ins, S.in_dims):
        mats[pre.reversed[a]] = _cols(bt, off, off + d)
        off += d
    rep = Representation(Q2, dims, mats)
    return MutatedRep(pre.qp, rep, S, kk, S.dims3)


def mutate_rep(P: QP, M: Representation, k: str, strategy: int = 1) -> Representation:
    """Representation of the premutated QP at ``k``."""
    return mutate_rep_full(P, M, k, strategy).rep


def reduce_rep(P: QP, M: Representation, split: SplitResult) -> Representation:
    """Transport ``M`` along the reduction right-equivalence and drop trivial arrows."""
    if M.quiver != P.quiver or split.equivalence.source != P.quiver:
        raise StructuralError("substitution does not match the representation's QP")
    if split.equivalence.is_identity() and not split.trivial_pairs:
        return M.over(split.reduced.quiver)
    L = M.nilpotency_bound()
    if L is None or L > P.N:
        raise PreconditionError(f"nilpotency bound {L} exceeds truncation {P.N}")
    psi = split.equivalence.inverse()
    Q = P.quiver
    trivial = {x for pr in split.trivial_pairs for x in pr}
    mats = {}
    for a in Q.arrows:
        m = M.evaluate(psi.image(a.name), a.source, a.target)
        if a.name in trivial:
            if not m.is_zero():
                raise StructuralError(f"trivial arrow {a.name} does not act as zero")
            continue
        mats[a.name] = m
    return Representation(split.reduced.quiver, M.dims, mats)


def mutate_and_reduce(P: QP, M: Representation, k: str, strategy: int = 1) -> tuple[QP, Representation, str]:
    m = mutate_rep_full(P, M, k, strategy)
    split = split_reduce(m.qp)
    return split.reduced, reduce_rep(m.qp, m.rep, split), m.new_vertex


# morphisms --------------------------------------------------------------------------

class RepMorphism:
    def __init__(self, source: Representation, target: Representation, maps: Mapping[str, Matrix]):
        if source.quiver != target.quiver:
            raise StructuralError("morphism between representations of different quivers")
        self.source, self.target = source, target
        self.maps = {}
        for v in source.quiver.vertices:
            shape = (source.dims[v], target.dims[v])
            m = maps.get(v)
            m = Matrix.zeros(*shape) if m is None else (m if isinstance(m, Matrix) else Matrix(m, shape[1]))
            if m.shape != shape:
                raise StructuralError(f"map at {v} has shape {m.shape}, expected {shape}")
            self.maps[v] = m

    def commutes(self) -> bool:
        return not self.defects()

    def defects(self) -> list[str]:
        out = []
        for a in self.source.quiver.arrows:
            lhs = self.source.mats[a.name] @ self.maps[a.target]
            rhs = self.maps[a.source] @ self.target.mats[a.name]
            if lhs != rhs:
                out.append(a.name)
        return out

    def then(self, other: "RepMorphism") -> "RepMorphism":
        """First ``self``, then ``other``."""
        return RepMorphism(self.source, other.target,
                           {v: self.maps[v] @ other.maps[v] for v in self.maps})

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {v: self.maps[v] - other.maps[v] for v in self.maps})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def nonzero_vertices(self) -> list[str]:
        return [v for v, m in self.maps.items() if not m.is_zero()]

    @classmethod
    def identity(cls, M: Representation) -> "RepMorphism":
        return cls(M, M, {v: Matrix.identity(d) for v, d in M.dims.items()})


def _cok_data(S: VertexScaffold):
    q0, q1, c = S.im_beta.nrows, S.ker_gamma_compl.nrows, S.ker_gamma_outer.nrows
    reps = Matrix.vstack([S.ker_gamma_compl, S.ker_gamma_outer], ncols=S.gamma.nrows)
    return q0, q1, c, reps


def mutate_morphism(P: QP, f: RepMorphism, k: str, strategy: int = 1) -> RepMorphism:
    """The morphism between mutated representations, with the 3x3 block at the new vertex."""
    mM = mutate_rep_full(P, f.source, k, strategy)
    mN = mutate_rep_full(P, f.target, k, strategy)
    S, T = mM.scaffold, mN.scaffold
    Q = P.quiver
    F_in = _block_diag([f.maps[Q.source(a)] for a in S.ins]) if S.ins else Matrix.zeros(0, 0)
    F_out = _block_diag([f.maps[Q.target(b)] for b in S.outs]) if S.outs else Matrix.zeros(0, 0)

    q0, q1, c, reps = _cok_data(S)
    t0, t1, tc, _ = _cok_data(T)
    g, e = S.im_gamma.nrows, S.ker_alpha_compl.nrows
    g2, e2 = T.im_gamma.nrows, T.ker_alpha_compl.nrows
    n_out2 = T.gamma.nrows

    # Cok beta -> Cok beta'
    f_cok = _cols(reps @ F_out @ T.basis_out_inv, t0, n_out2) if reps.nrows else Matrix.zeros(0, t1 + tc)
    i_t = Matrix.hstack([Matrix.identity(q1), Matrix.zeros(q1, c)], nrows=q1)
    rho_t2 = Matrix.vstack([Matrix.identity(t1), Matrix.zeros(tc, t1)], ncols=t1)
    outer2_g = T.ker_gamma_outer @ T.gamma_coords
    gam_t2 = Matrix.vstack([Matrix.zeros(t1, g2), outer2_g], ncols=g2)
    outer_g = S.ker_gamma_outer @ S.gamma_coords
    j = Matrix.hstack([Matrix.zeros(g, q1), outer_g.inverse() if g else Matrix.zeros(0, 0)], nrows=g)

    # Ker alpha -> Ker alpha' in the adapted bases [G; E]
    KA = Matrix.vstack([S.im_gamma, S.ker_alpha_compl], ncols=S.gamma.ncols)
    KA2 = Matrix.vstack([T.im_gamma, T.ker_alpha_compl], ncols=T.gamma.ncols)
    f_ker = coordinates(KA2, KA @ F_in) if KA.nrows else Matrix.zeros(0, g2 + e2)
    iota = Matrix.hstack([Matrix.identity(g), Matrix.zeros(g, e)], nrows=g)
    sigma = Matrix.hstack([Matrix.zeros(e, g), Matrix.identity(e)], nrows=e)
    eps2 = Matrix.vstack([Matrix.identity(g2), Matrix.zeros(e2, g2)], ncols=g2)
    phi2 = Matrix.vstack([Matrix.zeros(g2, e2), Matrix.identity(e2)], ncols=e2)

    blocks = [
        [i_t @ f_cok @ rho_t2, i_t @ f_cok @ gam_t2, Matrix.zeros(q1, e2)],
        [j @ f_cok @ rho_t2, iota @ f_ker @ eps2, iota @ f_ker @ phi2],
        [Matrix.zeros(e, t1), sigma @ f_ker @ eps2, sigma @ f_ker @ phi2],
    ]
    fk = Matrix.vstack([Matrix.hstack(row, nrows=row[0].nrows) for row in blocks], ncols=t1 + g2 + e2)
    maps = {(mM.new_vertex if v == k else v): m for v, m in f.maps.items()}
    maps[mM.new_vertex] = fk
    return RepMorphism(mM.rep, mN.rep, maps)


# Hom spaces and isomorphism ------------------------------------------------------------

def hom_space(M: Representation, N: Representation) -> list[RepMorphism]:
    """Basis of the space of morphisms ``M -> N``."""
    if M.quiver != N.quiver:
        raise StructuralError("representations over different quivers")
    Q = M.quiver
    var = {}
    for v in Q.vertices:
        for i in range(M.dims[v]):
            for j in range(N.dims[v]):
                var[(v, i, j)] = len(var)
    eqs: list[dict] = []
    for a in Q.arrows:
        s, t = a.source, a.target
        Ma, Na = M.mats[a.name], N.mats[a.name]
        # (M_a f_t - f_s N_a)[i, j] = 0
        for i in range(M.dims[s]):
            for j in range(N.dims[t]):
                eq: dict = {}
                for l in range(M.dims[t]):
                    c = Ma[i, l]
                    if c:
                        x = var[(t, l, j)]
                        eq[x] = eq.get(x, 0) + c
                for l in range(N.dims[s]):
                    c = Na[l, j]
                    if c:
                        x = var[(s, i, l)]
                        eq[x] = eq.get(x, 0) - c
                eq = {x: c for x, c in eq.items() if c}
                if eq:
                    eqs.append(eq)
    n = len(var)
    if n == 0:
        return []
    C = Matrix.zeros(n, len(eqs))
    for col, eq in enumerate(eqs):
        for x, c in eq.items():
            C.rows[x][col] = c
    sols = C.left_kernel() if eqs else Matrix.identity(n)
    out = []
    for row in sols.rows:
        maps = {}
        for v in Q.vertices:
            maps[v] = Matrix([[row[var[(v, i, j)]] for j in range(N.dims[v])] for i in range(M.dims[v])],
                             N.dims[v])
        out.append(RepMorphism(M, N, maps))
    return out


def _combo(basis: list[RepMorphism], coeffs, M, N) -> RepMorphism:
    maps = {v: Matrix.zeros(M.dims[v], N.dims[v]) for v in M.dims}
    for f, c in zip(basis, coeffs):
        if c:
            for v in maps:
                maps[v] = maps[v] + f.maps[v].scale(c)
    return RepMorphism(M, N, maps)


def _invertible(f: RepMorphism) -> bool:
    return all(m.nrows == 0 or m.det() != 0 for m in f.maps.values())


def are_isomorphic(M: Representation, N: Representation, seed: int = 0, trials: int = 64) -> bool:
    """Isomorphism test via generic elements of ``Hom(M, N)``.

    The determinant of a generic morphism is a polynomial of degree at most
    ``D = dim M`` in the coordinates of the Hom basis.  With at most four basis
    elements the whole grid ``{0..D}^h`` is searched, which is conclusive; with
    more, random points from growing ranges are tried.
    """
    if M.quiver != N.quiver or M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    basis = hom_space(M, N)
    h = len(basis)
    if h == 0:
        return False
    D = M.total_dim
    if h <= 4:
        grid = sorted(itertools.product(range(D + 1), repeat=h), key=lambda p: (max(p), p))
        return any(_invertible(_combo(basis, p, M, N)) for p in grid if any(p))
    rng = random.Random(seed)
    for t in range(max(trials, 64)):
        R = (D + 1) * (t + 1)
        coeffs = [rng.randint(-R, R) for _ in range(h)]
        if _invertible(_combo(basis, coeffs, M, N)):
            return True
    return False


# simple summands and nearly Morita ------------------------------------------------------

def strip_simple_summands(M: Representation, k: str) -> tuple[Representation, int]:
    """Split off the largest direct summand isomorphic to a power of ``S_k``."""
    Q = M.quiver
    n = M.dims[k]
    ins = [a for a in Q.arrows_to(k)]
    outs = [b for b in Q.arrows_from(k)]
    im_a = Matrix.vstack([M.mats[a.name] for a in ins], ncols=n).row_space()
    beta = Matrix.hstack([M.mats[b.name] for b in outs], nrows=n)
    ker_b = beta.left_kernel()
    both = intersect(ker_b, im_a)
    mult = ker_b.nrows - both.nrows
    if mult == 0:
        return M, 0
    s = Matrix.vstack([im_a, ker_b], ncols=n).row_space()
    D = Matrix.vstack([im_a, complement(s)], ncols=n)
    mats = dict(M.mats)
    for a in ins:
        mats[a.name] = coordinates(D, M.mats[a.name]) if M.mats[a.name].nrows else Matrix.zeros(0, D.nrows)
    for b in outs:
        mats[b.name] = D @ M.mats[b.name]
    dims = dict(M.dims)
    dims[k] = D.nrows
    return Representation(Q, dims, mats), mult


def arrow_matching(Q_from: Quiver, Q_to: Quiver) -> dict[str, str] | None:
    """Vertex-fixing arrow bijection: equal names first, then equal endpoints in order."""
    if set(Q_from.vertices) != set(Q_to.vertices) or len(Q_from.arrows) != len(Q_to.arrows):
        return None
    out: dict[str, str] = {}
    used: set[str] = set()
    for a in Q_from.arrows:
        if Q_to.has_arrow(a.name):
            b = Q_to.arrow(a.name)
            if (b.source, b.target) == (a.source, a.target):
                out[a.name] = a.name
                used.add(a.name)
    for a in Q_from.arrows:
        if a.name in out:
            continue
        cand = [b for b in Q_to.arrows if b.name not in used
                and (b.source, b.target) == (a.source, a.target)]
        if not cand:
            return None
        out[a.name] = cand[0].name
        used.add(cand[0].name)
    return out


@dataclass
class NearlyMoritaEntry:
    index: int
    ok: bool
    stripped: int
    dims_before: dict
    dims_after_one_step: dict
    off_k_preserved: bool
    message: str = ""

    def to_dict(self) -> dict:
        return {"index": self.index, "ok": self.ok, "stripped": self.stripped,
                "dims_before": self.dims_before, "dims_after_one_step": self.dims_after_one_step,
                "off_k_preserved": self.off_k_preserved, "message": self.message}


@dataclass
class NearlyMoritaReport:
    vertex: str
    entries: list[NearlyMoritaEntry]
    potential_matches: bool

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "ok": self.ok, "potential_matches": self.potential_matches,
                "entries": [e.to_dict() for e in self.entries]}


def check_nearly_morita(P: QP, k: str, reps: Sequence[Representation], seed: int = 0) -> NearlyMoritaReport:
    if not P.is_reduced():
        raise PreconditionError("QP must be reduced")
    if P.quiver.two_cycles(through=k):
        raise PreconditionError(f"2-cycle through {k!r}")
    pre1 = premutate_full(P, k)
    split1 = split_reduce(pre1.qp)
    P1, kk = split1.reduced, pre1.new_vertex
    pre2 = premutate_full(P1, kk)
    split2 = split_reduce(pre2.qp)
    P2 = split2.reduced
    match = arrow_matching(P2.quiver, P.quiver)
    pot_ok = False
    if match is not None:
        renamed = P2.quiver.renamed(arrows=match)
        Q0 = Quiver(P.quiver.vertices, renamed.arrows)
        W2 = TruncatedElement(Q0, P.N, {(s, tuple(match[a] for a in p)): c
                                        for (s, p), c in P2.potential.terms.items()})
        pot_ok = QP(Q0, W2, (), P.N).potential.terms == P.potential.terms
    entries = []
    for idx, M in enumerate(reps):
        try:
            require_valid(P, M)
            M0, mult = strip_simple_summands(M, k)
            mrep = mutate_rep_full(P, M0, k)
            M1 = reduce_rep(pre1.qp, mrep.rep, split1)
            off_ok = all(M1.dims[v] == M0.dims[v] for v in P.quiver.vertices if v != k)
            M1s, _ = strip_simple_summands(M1, kk)
            mrep2 = mutate_rep_full(P1, M1s, kk)
            M2 = reduce_rep(pre2.qp, mrep2.rep, split2)
            if match is None:
                raise StructuralError("double mutation does not return the original quiver")
            M2r = Representation(P.quiver, {v: M2.dims[v] for v in P.quiver.vertices},
                                 {match[a]: m for a, m in M2.mats.items()})
            iso = are_isomorphic(M2r, M0, seed=seed)
            ok = iso and off_ok
            msg = "" if ok else ("not isomorphic after double mutation" if not iso
                                 else "dimension vector changed away from k")
            entries.append(NearlyMoritaEntry(idx, ok, mult, M.dim_vector(), M1.dim_vector(), off_ok, msg))
        except (PreconditionError, StructuralError) as exc:
            entries.append(NearlyMoritaEntry(idx, False, 0, M.dim_vector(), {}, False, str(exc)))
    return NearlyMoritaReport(k, entries, pot_ok)
