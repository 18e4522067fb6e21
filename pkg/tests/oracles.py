"""Independent reference implementations used to cross-check the library.

Nothing here imports the algorithms under test; inputs are plain tuples.
"""

from fractions import Fraction
from itertools import permutations


def naive_rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return 0
    rank, ncols = 0, len(rows[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def naive_det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def fz_oracle(B, k):
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


def b_matrix_of(vertices, arrows):
    idx = {v: i for i, v in enumerate(vertices)}
    B = [[0] * len(vertices) for _ in vertices]
    for _, s, t in arrows:
        B[idx[s]][idx[t]] += 1
        B[idx[t]][idx[s]] -= 1
    return B


def cyclic_derivative(a, terms):
    """``terms``: dict cycle-tuple -> coeff."""
    out = {}
    for cyc, c in terms.items():
        for i, x in enumerate(cyc):
            if x == a:
                rest = cyc[i + 1:] + cyc[:i]
                out[rest] = out.get(rest, 0) + c
    return {k: v for k, v in out.items() if v}


def second_derivative(a, b, terms):
    out = {}
    for cyc, c in terms.items():
        m = len(cyc)
        for i in range(m):
            if cyc[i] == a and cyc[(i + 1) % m] == b:
                rest = tuple(cyc[(i + 2 + j) % m] for j in range(m - 2))
                out[rest] = out.get(rest, 0) + c
    return {k: v for k, v in out.items() if v}


def all_paths(vertices, arrows, max_len):
    """List of (start, arrow tuple) for lengths 0..max_len."""
    src = {n: s for n, s, _ in arrows}
    tgt = {n: t for n, _, t in arrows}
    out = [(v, ()) for v in vertices]
    layer = list(out)
    for _ in range(max_len):
        nxt = []
        for s, p in layer:
            end = tgt[p[-1]] if p else s
            for n, a_s, _ in arrows:
                if a_s == end:
                    nxt.append((s, p + (n,)))
        out += nxt
        layer = nxt
    return out


def quotient_dim(vertices, arrows, potential, t, frozen=()):
    """``dim KQ / (<d_a W> + J^{t+1})`` by spanning all ``p (d_a W) q``."""
    src = {n: s for n, s, _ in arrows}
    tgt = {n: t_ for n, _, t_ in arrows}
    paths = all_paths(vertices, arrows, t)
    idx = {p: i for i, p in enumerate(paths)}

    def end(p):
        return tgt[p[1][-1]] if p[1] else p[0]

    rows = []
    for n, s, e in arrows:
        if s in frozen or e in frozen:
            continue
        g = cyclic_derivative(n, potential)
        if not g:
            continue
        for p in paths:
            if end(p) != e:
                continue
            for q in paths:
                if q[0] != s:
                    continue
                row = [Fraction(0)] * len(paths)
                hit = False
                for mono, c in g.items():
                    word = p[1] + mono + q[1]
                    if len(word) <= t:
                        start = p[0]
                        row[idx[(start, word)]] += c
                        hit = True
                if hit:
                    rows.append(row)
    return len(paths) - naive_rank(rows)


def quivers_isomorphic(v1, a1, v2, a2):
    if len(v1) != len(v2) or len(a1) != len(a2):
        return False

    def counts(arrows):
        out = {}
        for _, s, t in arrows:
            out[(s, t)] = out.get((s, t), 0) + 1
        return out

    c1, c2 = counts(a1), counts(a2)
    for perm in permutations(v2):
        m = dict(zip(v1, perm))
        if {(m[s], m[t]): n for (s, t), n in c1.items()} == c2:
            return True
    return False


def matmul(A, B, inner):
    return [[sum((A[i][l] * B[l][j] for l in range(inner)), Fraction(0)) for j in range(len(B[0]) if B else 0)]
            for i in range(len(A))]
