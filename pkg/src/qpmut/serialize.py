"""JSON documents for quivers, elements, QPs and representations.

Rationals are written as strings ``"p/q"`` in lowest terms (integers as ``"p"``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import StructuralError
from .linalg import Matrix, fraction_str, to_fraction
from .paths import TruncatedElement
from .qp import DEFAULT_TRUNCATION, QP
from .quiver import Quiver
from .representation import Representation, RepMorphism


def _need(doc: Any, key: str, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise StructuralError(f"missing field {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise StructuralError(f"field {key!r} has the wrong type")
    return val


def _frac(x) -> Fraction:
    try:
        return to_fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise StructuralError(f"not a rational number: {x!r}") from None


# quivers ---------------------------------------------------------------------------

def quiver_to_json(Q: Quiver) -> dict:
    return {"vertices": list(Q.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in Q.arrows]}


def quiver_from_json(doc: dict) -> Quiver:
    vs = _need(doc, "vertices", list)
    arrows = []
    for a in _need(doc, "arrows", list):
        arrows.append((str(_need(a, "name")), str(_need(a, "from")), str(_need(a, "to"))))
    return Quiver([str(v) for v in vs], arrows)


# elements --------------------------------------------------------------------------

def element_to_json(x: TruncatedElement) -> list:
    out = []
    for (s, p), c in x.sorted_terms():
        item = {"coeff": fraction_str(c)}
        if p:
            item["path"] = list(p)
        else:
            item["vertex"] = s
        out.append(item)
    return out


def element_from_json(Q: Quiver, N: int, doc: list) -> TruncatedElement:
    if not isinstance(doc, list):
        raise StructuralError("an element is a list of terms")
    terms: dict = {}
    for item in doc:
        c = _frac(_need(item, "coeff"))
        if "path" in item:
            p = tuple(str(a) for a in item["path"])
            if not p:
                raise StructuralError("empty path; use 'vertex' for trivial paths")
            key = (Q.source(p[0]), p)
        else:
            v = str(_need(item, "vertex"))
            Q.vertex_index(v)
            key = (v, ())
        terms[key] = terms.get(key, 0) + c
    return TruncatedElement(Q, N, terms)


# QPs -------------------------------------------------------------------------------

def qp_to_json(P: QP) -> dict:
    return {"quiver": quiver_to_json(P.quiver),
            "potential": element_to_json(P.potential),
            "frozen": [v for v in P.quiver.vertices if v in P.frozen],
            "truncation": P.N}


def qp_from_json(doc: dict, truncation: int | None = None) -> QP:
    Q = quiver_from_json(_need(doc, "quiver", dict))
    N = truncation if truncation is not None else int(doc.get("truncation", DEFAULT_TRUNCATION))
    W = element_from_json(Q, N, doc.get("potential", []))
    frozen = [str(v) for v in doc.get("frozen", [])]
    for v in frozen:
        Q.vertex_index(v)
    return QP(Q, W, frozen, N)


# representations ---------------------------------------------------------------------

def matrix_to_json(M: Matrix) -> list:
    return M.to_strings()


def matrix_from_json(doc, nrows: int, ncols: int) -> Matrix:
    if not isinstance(doc, list) or len(doc) != nrows:
        raise StructuralError(f"expected {nrows} matrix rows")
    rows = []
    for r in doc:
        if not isinstance(r, list) or len(r) != ncols:
            raise StructuralError(f"expected {ncols} matrix columns")
        rows.append([_frac(x) for x in r])
    return Matrix(rows, ncols)


def rep_to_json(M: Representation) -> dict:
    return {"dims": {v: M.dims[v] for v in M.quiver.vertices},
            "matrices": {a.name: matrix_to_json(M.mats[a.name]) for a in M.quiver.arrows
                         if M.mats[a.name].nrows and M.mats[a.name].ncols}}


def rep_from_json(Q: Quiver, doc: dict) -> Representation:
    dims_doc = _need(doc, "dims", dict)
    dims = {}
    for v, d in dims_doc.items():
        if not isinstance(d, int) or d < 0:
            raise StructuralError(f"dimension at {v!r} must be a natural number")
        dims[str(v)] = d
    for v in dims:
        Q.vertex_index(v)
    full = {v: dims.get(v, 0) for v in Q.vertices}
    mats = {}
    for name, m in doc.get("matrices", {}).items():
        a = Q.arrow(str(name))
        mats[a.name] = matrix_from_json(m, full[a.source], full[a.target])
    return Representation(Q, full, mats)


def morphism_to_json(f: RepMorphism) -> dict:
    return {"maps": {v: matrix_to_json(f.maps[v]) for v in f.source.quiver.vertices
                     if f.maps[v].nrows and f.maps[v].ncols}}


def morphism_from_json(M: Representation, N: Representation, doc: dict) -> RepMorphism:
    maps = {}
    for v, m in _need(doc, "maps", dict).items():
        M.quiver.vertex_index(str(v))
        maps[str(v)] = matrix_from_json(m, M.dims[str(v)], N.dims[str(v)])
    return RepMorphism(M, N, maps)


def dumps(doc: Any, fmt: str = "json") -> str:
    if fmt == "pretty":
        return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False)
    return json.dumps(doc, sort_keys=False, separators=(",", ":"), ensure_ascii=False)
