"""Command line front end.

Every command reads JSON (a file path or a bundled fixture name) and writes a
JSON document.  Failures produce ``{"error": {"code", "message", "datum"}}``
and a nonzero exit status.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import __version__
from .corpus import fixture_dir, load_json
from .coxeter import CoxeterDatum, is_reduced_word, word_qp
from .errors import PreconditionError, QPMutError, StructuralError
from .jacobian import (ext_matrix, finiteness_certificate, minimal_relation_dims, rigidity_verdict,
                       verify_presentation_complexes)
from .qp import DEFAULT_TRUNCATION, mutate_full, premutate_full, split_reduce, validate_qp
from .quiver import b_matrix, fz_mutate
from .representation import (are_isomorphic, check_nearly_morita, mutate_morphism, mutate_rep_full,
                             reduce_rep, validate_rep)
from .serialize import (dumps, element_to_json, morphism_from_json, morphism_to_json, qp_from_json,
                        qp_to_json, quiver_from_json, quiver_to_json, rep_from_json, rep_to_json)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass
class Config:
    truncation: int | None = None
    seed: int = 0
    fmt: str = "json"
    fixtures: str = ""


class CLIError(QPMutError):
    def __init__(self, code: str, message: str, datum=None):
        super().__init__(message)
        self.code, self.datum = code, datum


def _need(args, name: str):
    val = getattr(args, name, None)
    if val is None:
        raise CLIError("usage", f"--{name.replace('_', '-')} is required for this command")
    return val


def _truncation(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("truncation must be an integer") from None
    if n < 3:
        raise argparse.ArgumentTypeError("truncation must be at least 3")
    return n


def _seed(value: str) -> int:
    try:
        n = int(value, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer") from None
    if not -(2 ** 63) <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return n


def _load(name: str, what: str):
    try:
        return load_json(name)
    except StructuralError as exc:
        raise CLIError("io", str(exc), name) from None


def _load_qp(args, cfg: Config, key: str = "in"):
    doc = _load(_need(args, key), "QP")
    return qp_from_json(doc, cfg.truncation)


def _load_quiver(args):
    doc = _load(_need(args, "in"), "quiver")
    return quiver_from_json(doc["quiver"] if "quiver" in doc else doc)


def _rep_qp(args, cfg: Config, doc: dict):
    src = args.qp if args.qp is not None else doc.get("qp")
    if src is None:
        raise CLIError("usage", "--qp is required (or a 'qp' field in the input)")
    qdoc = _load(src, "QP") if isinstance(src, str) else src
    if "quiver" not in qdoc and isinstance(qdoc.get("qp"), (dict, str)):
        inner = qdoc["qp"]
        qdoc = _load(inner, "QP") if isinstance(inner, str) else inner
    return qp_from_json(qdoc, cfg.truncation)


def _vertex(Q, k):
    if k is None:
        raise CLIError("usage", "--at is required for this command")
    if not Q.has_vertex(k):
        raise CLIError("precondition", f"unknown vertex {k!r}", k)
    return k


# commands --------------------------------------------------------------------------

def cmd_quiver(args, cfg):
    Q = _load_quiver(args)
    if args.action == "bmatrix":
        return {"vertices": list(Q.vertices), "b_matrix": b_matrix(Q)}
    if args.action == "mutate":
        k = _vertex(Q, args.at)
        Q2 = fz_mutate(Q, k)
        return {"quiver": quiver_to_json(Q2), "b_matrix": b_matrix(Q2)}
    return {"vertices": len(Q.vertices), "arrows": len(Q.arrows), "loops": [a.name for a in Q.loops()],
            "two_cycles": [list(p) for p in Q.two_cycles()]}


def cmd_qp(args, cfg):
    P = _load_qp(args, cfg)
    if args.action == "validate":
        return validate_qp(P).to_dict()
    if args.action == "reduce":
        sr = split_reduce(P)
        return {"qp": qp_to_json(sr.reduced), "trivial_pairs": [list(p) for p in sr.trivial_pairs],
                "substitution": {a: element_to_json(x) for a, x in sr.equivalence.images.items()},
                "check": sr.check(P)}
    if args.action == "rigid":
        return rigidity_verdict(P).to_dict()
    k = _vertex(P.quiver, args.at)
    if args.action == "premutate":
        pre = premutate_full(P, k)
        return {"qp": qp_to_json(pre.qp), "new_vertex": pre.new_vertex}
    red, phi, pre, sr = mutate_full(P, k)
    return {"qp": qp_to_json(red), "new_vertex": pre.new_vertex,
            "trivial_pairs": [list(p) for p in sr.trivial_pairs],
            "substitution": {a: element_to_json(x) for a, x in phi.images.items()}}


def cmd_jacobian(args, cfg):
    P = _load_qp(args, cfg)
    if args.action == "dim":
        c = finiteness_certificate(P)
        return {"dim": c.dim, "certified": c.finite, "nilpotency": c.nilpotency_index}
    if args.action == "certify":
        return finiteness_certificate(P).to_dict()
    if args.action == "relations":
        return minimal_relation_dims(P).to_dict()
    if args.action == "ext":
        return {"vertices": list(P.quiver.vertices), "ext1": ext_matrix(P, 1), "ext2": ext_matrix(P, 2)}
    return verify_presentation_complexes(P).to_dict()


def cmd_rep(args, cfg):
    doc = _load(_need(args, "in"), "representation")
    P = _rep_qp(args, cfg, doc)
    if args.action == "nearly-morita":
        reps = [rep_from_json(P.quiver, r) for r in doc.get("reps", [doc])]
        ks = [args.at] if args.at is not None else list(P.quiver.vertices)
        reports = [check_nearly_morita(P, _vertex(P.quiver, k), reps, cfg.seed) for k in ks]
        return {"ok": all(r.ok for r in reports), "vertices": [r.to_dict() for r in reports]}
    if args.action == "iso":
        reps = doc.get("reps")
        if not isinstance(reps, list) or len(reps) != 2:
            raise CLIError("usage", "iso expects {'reps': [left, right]}")
        M, N = (rep_from_json(P.quiver, r) for r in reps)
        return {"isomorphic": are_isomorphic(M, N, cfg.seed)}
    if args.action == "morphism-mutate":
        k = _vertex(P.quiver, args.at)
        M = rep_from_json(P.quiver, doc["source"])
        N = rep_from_json(P.quiver, doc["target"])
        f = morphism_from_json(M, N, doc)
        if not f.commutes():
            raise CLIError("precondition", "input morphism does not commute", f.defects())
        g = mutate_morphism(P, f, k)
        return {"source": rep_to_json(g.source), "target": rep_to_json(g.target), **morphism_to_json(g),
                "commutes": g.commutes()}
    if "rep" in doc:
        rdoc = doc["rep"]
    elif "dims" not in doc and doc.get("reps"):
        rdoc = doc["reps"][0]
    else:
        rdoc = doc
    M = rep_from_json(P.quiver, rdoc)
    if args.action == "validate":
        return validate_rep(P, M).to_dict()
    k = _vertex(P.quiver, args.at)
    m = mutate_rep_full(P, M, k)
    sr = split_reduce(m.qp)
    R = reduce_rep(m.qp, m.rep, sr)
    return {"new_vertex": m.new_vertex, "summands": list(m.summand_dims),
            "premutated": {"qp": qp_to_json(m.qp), "rep": rep_to_json(m.rep)},
            "reduced": {"qp": qp_to_json(sr.reduced), "rep": rep_to_json(R)}}


def _coxeter_input(args, cfg):
    doc = _load(args.base, "base") if args.base else (_load(args.in_, "word") if args.in_ else None)
    if doc is None:
        raise CLIError("usage", "--base (or --in with a word document) is required")
    base = quiver_from_json(doc["base"] if "base" in doc else doc.get("quiver", doc))
    if args.word:
        word = [w for w in args.word.replace(" ", ",").split(",") if w]
    elif "word" in doc:
        word = [str(u) for u in doc["word"]]
    else:
        raise CLIError("usage", "--word is required")
    return CoxeterDatum(base), word


def cmd_coxeter(args, cfg):
    C, word = _coxeter_input(args, cfg)
    if args.action == "reduced":
        return {"word": word, "reduced": is_reduced_word(C, word),
                "roots": [[str(x) for x in r] for r in C.word_roots(word)]}
    N = cfg.truncation or DEFAULT_TRUNCATION
    full, stable, wq = word_qp(C, word, N)
    if args.action == "quiver":
        return wq.to_dict()
    if args.action == "qp":
        return {"stable": qp_to_json(stable), "frozen_presentation": qp_to_json(full),
                "note": "the frozen QP is a conjectural presentation; the stable QP is the proven one"}
    return rigidity_verdict(stable).to_dict()


def cmd_selftest(args, cfg):
    from .acceptance import run_all

    results = run_all(cfg.seed)
    return {"ok": all(r.ok for r in results), "results": [r.to_dict() for r in results]}


COMMANDS = {
    "quiver": (cmd_quiver, ["info", "bmatrix", "mutate"]),
    "qp": (cmd_qp, ["validate", "premutate", "reduce", "mutate", "rigid"]),
    "jacobian": (cmd_jacobian, ["dim", "certify", "relations", "ext", "verify-complexes"]),
    "rep": (cmd_rep, ["validate", "mutate", "morphism-mutate", "iso", "nearly-morita"]),
    "coxeter": (cmd_coxeter, ["reduced", "quiver", "qp", "rigid"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="in_", metavar="FILE", help="input JSON file or fixture name")
    common.add_argument("--out", metavar="FILE", help="write the output document here")
    common.add_argument("--at", metavar="VERTEX", help="vertex to mutate at")
    common.add_argument("--truncation", type=_truncation, metavar="N", help="truncation degree (>= 3)")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--format", choices=["json", "pretty"], default="json")
    common.add_argument("--word", help="comma separated Coxeter word")
    common.add_argument("--base", metavar="FILE", help="base quiver for coxeter commands")
    common.add_argument("--qp", metavar="FILE", help="QP for rep commands")
    p = argparse.ArgumentParser(prog="qpmut", description="Quivers with potential and their mutations.")
    p.add_argument("--version", action="version", version=f"qpmut {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, actions) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("action", choices=actions)
    sub.add_parser("selftest", parents=[common])
    return p


def _render_selftest(doc: dict) -> str:
    lines = [f"[{'PASS' if r['ok'] else 'FAIL'}] {r['criterion']:2d} {r['title']}: {r['detail']}"
             for r in doc["results"]]
    n = sum(r["ok"] for r in doc["results"])
    lines.append(f"{n}/{len(doc['results'])} criteria passed")
    return "\n".join(lines)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_ERROR), ""
    cfg = Config(args.truncation, args.seed, args.format, str(fixture_dir()))
    if not hasattr(args, "in_"):
        args.in_ = None
    setattr(args, "in", args.in_)
    try:
        if args.command == "selftest":
            doc = cmd_selftest(args, cfg)
            text = _render_selftest(doc) if cfg.fmt == "pretty" else dumps(doc, "json")
            status = EXIT_OK if doc["ok"] else EXIT_FAIL
        else:
            handler = COMMANDS[args.command][0]
            doc = handler(args, cfg)
            text = dumps(doc, cfg.fmt)
            status = EXIT_OK
    except CLIError as exc:
        return EXIT_ERROR, dumps({"error": {"code": exc.code, "message": str(exc), "datum": exc.datum}}, cfg.fmt)
    except PreconditionError as exc:
        return EXIT_ERROR, dumps({"error": {"code": "precondition", "message": str(exc), "datum": None}}, cfg.fmt)
    except StructuralError as exc:
        return EXIT_ERROR, dumps({"error": {"code": "structural", "message": str(exc), "datum": None}}, cfg.fmt)
    except (KeyError, TypeError) as exc:
        return EXIT_ERROR, dumps({"error": {"code": "malformed", "message": f"malformed input: {exc}",
                                            "datum": None}}, cfg.fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return status, text


def main(argv: list[str] | None = None) -> int:
    status, text = run(argv)
    if text:
        stream = sys.stderr if status == EXIT_ERROR else sys.stdout
        print(text, file=stream)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
