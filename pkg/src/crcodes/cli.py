"""Command-line front end.

Exit status: 0 success, 1 verdict "not completely regular" or
"infeasible", 2 input error, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .codes import (Code, QuotientMatrix, Witness, code_spectrum, distance_partition, is_completely_regular,
                    minimum_distance, strength)
from .config import DEFAULT_TOL, Tolerances
from .corpus import hamming_code, named_code
from .cosets import (AdditiveCode, coset_graph, coset_partition, edge_multiplicity, is_completely_regular_partition,
                     quotient_relation_check, read_generators, rifa_zinoviev, write_generators)
from .errors import CRCodesError, FileFormatError, LemmaViolation, LloydViolation, NotCompletelyRegular
from .exact import fmt, near, parse_scalar
from .graphs import Graph, NotDRG, generate, is_distance_regular, parse_graph_spec, write_graph
from .leonard import ClassificationReport, classify, gap_filter, graph_qpoly_orderings, qpoly_test
from .spectral import eigenvalues, spectrum, valencies

EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(CRCodesError):
    pass


# ---------------------------------------------------------------------------
# inputs


def read_code_file(path: str) -> tuple[Graph, Code]:
    """Line 1: graph spec. Then one codeword per line."""
    try:
        with open(path) as fh:
            lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(fh)]
    except OSError as exc:
        raise FileFormatError(str(exc), path=path) from None
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise FileFormatError("empty code file", path=path)
    lineno, head = lines[0]
    try:
        g = parse_graph_spec(head, base_dir=os.path.dirname(os.path.abspath(path)))
    except (CRCodesError, ValueError) as exc:
        raise FileFormatError(f"bad graph specification {head!r}: {exc}", line=lineno, path=path) from None
    verts = []
    for lineno, word in lines[1:]:
        try:
            verts.append(g.vertex(word))
        except (ValueError, KeyError) as exc:
            raise FileFormatError(f"bad codeword {word!r}: {exc}", line=lineno, path=path) from None
    if not verts:
        raise FileFormatError("no codewords", path=path)
    return g, Code.from_vertices(g, verts, os.path.basename(path))


def load(args) -> tuple[Graph, Code, AdditiveCode | None]:
    code = getattr(args, "code", None)
    if code and os.path.exists(code):
        if args.graph:
            raise InputError("--graph cannot be combined with a code file; the file names its graph")
        g, c = read_code_file(code)
        return g, c, None
    if not args.graph:
        raise InputError("--graph is required unless --code names a code file")
    g = parse_graph_spec(args.graph)
    if not code:
        raise InputError("--code is required (a code file or a generator name)")
    c, add = named_code(g, code)
    return g, c, add


def tolerances(args) -> Tolerances:
    return Tolerances(eigen=args.tolerance_eigen, residual=DEFAULT_TOL.residual, zero=args.tolerance_zero)


# ---------------------------------------------------------------------------
# documents


def _seq(xs):
    return [fmt(x) for x in xs]


def analysis_document(g: Graph, c: Code, tol: Tolerances) -> dict:
    dp = distance_partition(g, c)
    doc = {"graph": g.describe(), "code": c.name or f"{c.size} codewords", "size": c.size,
           "partition_sizes": dp.sizes}
    doc["minimum_distance"] = minimum_distance(g, c) if c.size > 1 else None
    u = is_completely_regular(g, c)
    doc["cr"] = isinstance(u, QuotientMatrix)
    doc["rho"] = dp.rho
    if isinstance(u, Witness):
        doc["witness"] = {"cell": u.cell, "x": g.label(u.x), "y": g.label(u.y),
                          "counts_x": list(u.counts_x), "counts_y": list(u.counts_y)}
        return doc
    ia = g.intersection_array()
    cs = code_spectrum(u, spectrum(ia, tol), tol)
    orderings, _ = graph_qpoly_orderings(ia, tol)
    natural = tuple(range(1, ia.D + 1))
    doc["quotient_matrix"] = u.matrix()
    doc["spectrum"] = _seq(cs.etas)
    doc["sstar"] = list(cs.sstar)
    doc["strength"] = strength(cs, natural) if natural in orderings else None
    return doc


def report_document(rep: ClassificationReport, extra: dict | None = None) -> dict:
    exp = rep.expansion
    doc = {
        "graph": rep.graph,
        "code": rep.code,
        "cr": True,
        "rho": rep.rho,
        "quotient_matrix": rep.quotient.matrix(),
        "spectrum": _seq(rep.etas),
        "sstar": list(rep.sstar),
        "strength": rep.strength,
        "qpoly": {"flag": rep.is_qpoly, "orderings": [list(o) for o in rep.qpoly.orderings]},
        "leonard": {"flag": rep.is_leonard, "thetas": _seq(rep.leonard_thetas)},
        "harmonic_t": rep.harmonic_t,
        "arithmetic_t": fmt(rep.arithmetic_t) if rep.arithmetic_t is not None else None,
        "filters": dict(rep.filters),
        "expansions": {"lambda": _seq(exp.lambdas) if exp else [], "tau": _seq(exp.taus) if exp else []},
    }
    if extra:
        doc.update(extra)
    return doc


def table(doc: dict, indent: str = "") -> str:
    lines = []
    for key, val in doc.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(table(val, indent + "  "))
        else:
            lines.append(f"{indent}{key:<18} {json.dumps(val)}")
    return "\n".join(lines)


def emit(doc: dict, args) -> None:
    text = json.dumps(doc, indent=2) if args.format == "json" else table(doc)
    print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    g, c, _ = load(args)
    doc = analysis_document(g, c, tolerances(args))
    emit(doc, args)
    return EXIT_OK if doc["cr"] else EXIT_VERDICT


def cmd_classify(args) -> int:
    g, c, _ = load(args)
    tol = tolerances(args)
    try:
        rep = classify(g, c, tol, ordering=args.ordering)
    except NotCompletelyRegular:
        emit(analysis_document(g, c, tol), args)
        return EXIT_VERDICT
    emit(report_document(rep), args)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace("{", "").replace("}", "").split(",") if x.strip()]


def _quotient(text: str) -> QuotientMatrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError:
        rows = [[int(x) for x in r.split(",")] for r in text.split(";")]
    return QuotientMatrix.from_matrix(rows)


def cmd_feasibility(args) -> int:
    if not args.graph:
        raise InputError("--graph is required")
    g = parse_graph_spec(args.graph)
    g_ia = g.intersection_array()
    tol = tolerances(args)
    sp = spectrum(g_ia, tol)
    doc = {"graph": g.describe(), "candidate": {}}
    filters = {}
    sstar = None
    if args.quotient:
        u = _quotient(args.quotient)
        doc["candidate"]["quotient_matrix"] = u.matrix()
        try:
            cs = code_spectrum(u, sp, tol)
            filters["lloyd"] = True
            sstar = list(cs.sstar)
            doc["spectrum"] = _seq(cs.etas)
        except LloydViolation as exc:
            filters["lloyd"] = False
            doc["lloyd_detail"] = str(exc)
    elif args.spectrum:
        vals = [parse_scalar(x) for x in args.spectrum.split(",")]
        doc["candidate"]["spectrum"] = _seq(vals)
        idx = [sp.index_of(v, tol.eigen) for v in vals]
        filters["lloyd"] = all(i is not None for i in idx)
        sstar = sorted(i for i in idx if i)
    elif args.sstar:
        sstar = sorted(_int_list(args.sstar))
        doc["candidate"]["sstar"] = sstar
        if any(not 1 <= i <= g_ia.D for i in sstar):
            raise InputError(f"S* indices must lie in 1..{g_ia.D}")
    else:
        raise InputError("give one of --sstar, --spectrum or --quotient")
    if sstar is not None:
        doc["sstar"] = sstar
        orderings, _ = graph_qpoly_orderings(g_ia, tol)
        natural = tuple(range(1, g_ia.D + 1))
        filters["gap"] = gap_filter(sstar) if natural in orderings else None
        filters["parity"] = None
        if _is_antipodal(g_ia):
            idx = [0, *sstar]
            filters["parity"] = all(i % 2 == 0 for i in idx) or all(i % 2 == j % 2 for j, i in enumerate(idx))
    doc["filters"] = filters
    ok = all(v is not False for v in filters.values())
    doc["feasible"] = ok
    emit(doc, args)
    return EXIT_OK if ok else EXIT_VERDICT


def _is_antipodal(ia) -> bool:
    return ia.D >= 2 and valencies(ia)[-1] == 1


def _additive(args) -> tuple[Graph, AdditiveCode]:
    if args.generators:
        add = read_generators(args.generators, args.q)
        return add.graph(), add
    g, c, add = load(args)
    if add is None:
        if g.family != "hamming":
            raise InputError("coset needs an additive code in a Hamming graph")
        n, q = g.params
        words = [[int(ch) for ch in g.label(v)] for v in c.vertices]
        add = AdditiveCode.from_generators(words, q, n, name=c.name)
        if add.size != c.size:
            raise InputError(f"the {c.size} codewords do not form an additive code (their span has {add.size} words)")
    return g, add


def cmd_coset(args) -> int:
    g, add = _additive(args)
    tol = tolerances(args)
    c = add.as_code(g)
    part = coset_partition(add)
    doc = {"graph": g.describe(), "code": add.name or f"[{add.n},{add.dimension}]_{add.q}",
           "dimension": add.dimension, "cosets": len(part)}
    u = is_completely_regular(g, c)
    doc["cr"] = isinstance(u, QuotientMatrix)
    if not doc["cr"]:
        emit(doc, args)
        return EXIT_VERDICT
    doc["quotient_matrix"] = u.matrix()
    doc["cr_partition"] = is_completely_regular_partition(g, part.cells)
    qg = coset_graph(g, add, part)
    res = is_distance_regular(qg)
    doc["coset_graph"] = {"vertices": qg.n, "edges": len(qg.edges()), "edge_multiplicity": edge_multiplicity(g, add, part)}
    if isinstance(res, NotDRG):
        doc["coset_graph"]["distance_regular"] = False
        doc["coset_graph"]["witness"] = str(res)
        ok = False
    else:
        doc["coset_graph"]["distance_regular"] = True
        doc["coset_graph"]["intersection_array"] = str(res)
        doc["quotient_relation"] = quotient_relation_check(u, res)
        cs = code_spectrum(u, spectrum(g.intersection_array(), tol), tol)
        mapped = sorted(((e - u.alpha[0]) / Fraction(u.gamma[1]) for e in cs.etas), reverse=True)
        qeig = eigenvalues(res) if res.D >= 1 else []
        doc["eigenvalue_map"] = len(mapped) == len(qeig) and all(near(a, b, tol.eigen) for a, b in zip(mapped, qeig))
        code_q = qpoly_test(u, cs, tol).flag
        graph_q = bool(graph_qpoly_orderings(res, tol)[0]) if res.D >= 2 else True
        doc["qpoly"] = {"code": code_q, "coset_graph": graph_q}
        ok = doc["quotient_relation"] and doc["eigenvalue_map"] and doc["cr_partition"]
    if args.out:
        with open(args.out, "w") as fh:
            write_graph(qg, fh)
        doc["written"] = args.out
    emit(doc, args)
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_generate(args) -> int:
    kind = args.kind.lower().replace("_", "-")
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if kind == "rifa-zinoviev":
            m, l = (int(x) for x in args.params)
            write_generators(rifa_zinoviev(m, l), out)
        elif kind == "hamming-code":
            r, q = (int(x) for x in args.params)
            write_generators(hamming_code(r, q), out)
        elif kind == "code":
            if not args.graph or not args.code:
                raise InputError("generate code needs --graph and --code")
            g = parse_graph_spec(args.graph)
            c, _ = named_code(g, args.code)
            out.write(g.spec_line() + "\n")
            out.write("".join(w + "\n" for w in c.words()))
        else:
            write_graph(generate(kind, *args.params), out)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph spec, e.g. 'hamming 7 2', 'johnson 5 2', 'file g.txt'")
    common.add_argument("--code", help="code file (first line: graph spec) or generator name")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--tolerance-eigen", type=float, default=DEFAULT_TOL.eigen)
    common.add_argument("--tolerance-zero", type=float, default=DEFAULT_TOL.zero)
    common.add_argument("--ordering", choices=("natural", "search"), default="natural")
    common.add_argument("--out", help="output file (graph or generator matrix)")

    p = argparse.ArgumentParser(prog="crcodes", description="Completely regular codes in distance-regular graphs")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="distance partition, complete regularity, spectrum")
    sub.add_parser("classify", parents=[common], help="full Q-polynomial / Leonard / harmonic report")
    f = sub.add_parser("feasibility", parents=[common], help="Lloyd, gap and parity filters on a candidate")
    f.add_argument("--sstar", help="candidate S* indices, e.g. 1,3")
    f.add_argument("--spectrum", help="candidate code eigenvalues, e.g. 7,-1")
    f.add_argument("--quotient", help="candidate U as JSON or rows '0,7;1,6'")
    c = sub.add_parser("coset", parents=[common], help="coset graph and quotient relation of an additive code")
    c.add_argument("--generators", help="generator matrix file, one word per line")
    c.add_argument("--q", type=int, default=2, help="alphabet size for --generators")
    g = sub.add_parser("generate", parents=[common], help="write a graph, a generator matrix or a code file")
    g.add_argument("kind", help="graph family, rifa-zinoviev, hamming-code or code")
    g.add_argument("params", nargs="*")
    return p


COMMANDS = {"analyze": cmd_analyze, "classify": cmd_classify, "feasibility": cmd_feasibility,
            "coset": cmd_coset, "generate": cmd_generate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except LemmaViolation as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CRCodesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
