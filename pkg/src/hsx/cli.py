"""Command-line front end.

Every command prints either a short human-readable report or, with
``--json``, one JSON document that starts with the common header
``tool_version, space, seed, eval_points``.  Exit status: 0 ok, 1 a checked
property failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cohomology import (CohClass, bilinear_form_xi, chevalley_h_mult, class_from_json,
                         class_to_json, degree, eff, gram_matrix, h_mult_power,
                         is_cumbersome, pair_complementary, schubert_class)
from .coset import (degree_strata, get_space, is_admissible, minimal_generating,
                    parse_descriptor, stabilizer_roots)
from .errors import CrossCheckFailed, FormulaMismatch, HsxError, IdentityFailed, PosdefFailed
from .localize import DEFAULT_SEED, EvalPoint, integrate
from . import adjoint as adj
from . import table as tbl

PROPERTY_FAILURES = (CrossCheckFailed, FormulaMismatch, IdentityFailed, PosdefFailed)


class Outcome:
    """What a command produced: JSON payload, text lines and a pass flag."""

    def __init__(self, payload: dict, lines: list[str], ok: bool = True,
                 space: str | None = None, seed: int | None = None, points: EvalPoint | None = None):
        self.payload = payload
        self.lines = lines
        self.ok = ok
        self.space = space
        self.seed = seed
        self.points = points


# -- argument helpers ----------------------------------------------------------------


def _word(text: str | None, flag: str) -> list[int]:
    if text is None:
        raise HsxError(f"{flag} is required")
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise HsxError(f"{flag} must be comma-separated integers, got {text!r}") from None


def _space(args):
    if not args.type:
        raise HsxError("--type is required")
    desc = args.type if "/" in args.type else f"{args.type}/P{args.node or ''}"
    if "/" not in args.type and not args.node:
        raise HsxError("--node is required")
    series, rank, nodes = parse_descriptor(desc)
    return get_space(series, rank, nodes)


def _rep(space, text, flag):
    return space.index_of_word(_word(text, flag), strict=True)


def _load_class(space, path):
    if not path:
        raise HsxError("--class FILE is required")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise HsxError(f"cannot read class file {path}: {exc}") from exc
    return class_from_json(space, data)


def _fmt_class(space, c: CohClass) -> str:
    if c.is_zero():
        return "0"
    return " + ".join(f"{a}*s[{','.join(map(str, space.word(i)))}]" for i, a in c.coeffs.items())


def _w(space, i) -> str:
    return ",".join(map(str, space.word(i))) or "()"


def _matrix_lines(matrix) -> list[str]:
    return ["  " + " ".join(str(x) for x in row) for row in matrix]


# -- space commands ------------------------------------------------------------------


def cmd_describe(args):
    sp = _space(args)
    sizes = [len(sp.strata[d]) for d in range(sp.dim + 1)]
    deg = degree(sp) if sp.picard_rank_one else None
    payload = {"dim": sp.dim, "classes": len(sp), "picard_rank": len(sp.parabolic_nodes),
               "strata_sizes": sizes, "degree": deg,
               "fundamental": sp.word(sp.fundamental), "point": sp.word(sp.point)}
    lines = [f"space {sp.name}", f"dim {sp.dim}", f"classes {len(sp)}",
             f"picard rank {len(sp.parabolic_nodes)}",
             "strata sizes (codim 0..dim) " + " ".join(map(str, sizes))]
    if deg is not None:
        lines.append(f"degree {deg}")
    return Outcome(payload, lines, space=sp.name)


def cmd_strata(args):
    sp = _space(args)
    codims = [args.d] if args.d is not None else list(range(sp.dim + 1))
    strata = {d: degree_strata(sp, d) for d in codims}
    payload = {"strata": {str(d): [sp.word(i) for i in reps] for d, reps in strata.items()}}
    lines = [f"codim {d}: " + "; ".join(_w(sp, i) for i in reps) for d, reps in strata.items()]
    return Outcome(payload, lines, space=sp.name)


def cmd_dual(args):
    sp = _space(args)
    reps = [_rep(sp, args.w, "--w")] if args.w is not None else range(len(sp))
    pairs = [(i, sp.dual[i]) for i in reps]
    payload = {"dual": [{"w": sp.word(i), "dual": sp.word(j)} for i, j in pairs]}
    lines = [f"{_w(sp, i)} -> {_w(sp, j)}" for i, j in pairs]
    return Outcome(payload, lines, space=sp.name)


def cmd_stabilizer(args):
    sp = _space(args)
    w = _rep(sp, args.w, "--w")
    stab, sigma = stabilizer_roots(sp, w)
    payload = {"w": sp.word(w), "levi_nodes": sorted(stab), "sigma": sorted(sigma)}
    lines = [f"w {_w(sp, w)}", f"stabiliser Levi nodes {sorted(stab)}", f"sigma {sorted(sigma)}"]
    return Outcome(payload, lines, space=sp.name)


def cmd_admissible(args):
    sp = _space(args)
    w = _rep(sp, args.w, "--w")
    v = _rep(sp, args.v, "--v")
    ok = is_admissible(sp, v, w)
    return Outcome({"w": sp.word(w), "v": sp.word(v), "admissible": ok},
                   ["true" if ok else "false"], space=sp.name)


def cmd_mingen(args):
    sp = _space(args)
    reps = minimal_generating(sp)
    return Outcome({"minimal_generating": [sp.word(i) for i in reps]},
                   [_w(sp, i) for i in reps], space=sp.name)


def cmd_chevalley(args):
    sp = _space(args)
    if args.w is not None:
        w = _rep(sp, args.w, "--w")
        prod = chevalley_h_mult(sp, schubert_class(sp, w))
        return Outcome({"w": sp.word(w), "product": class_to_json(sp, prod)},
                       [f"h * s[{_w(sp, w)}] = {_fmt_class(sp, prod)}"], space=sp.name)
    edges = [{"from": sp.word(i), "to": sp.word(j), "coeff": m}
             for i in range(len(sp)) for j, m in sp.chevalley_edges[i]]
    lines = [f"{_w(sp, i)} -> {_w(sp, j)} : {m}"
             for i in range(len(sp)) for j, m in sp.chevalley_edges[i]]
    return Outcome({"edges": edges}, lines, space=sp.name)


def _gram_outcome(sp, rep, extra=None):
    payload = rep.to_dict(sp)
    payload.update(extra or {})
    lines = [f"k {rep.k}", "basis " + "; ".join(_w(sp, i) for i in rep.basis), "matrix"]
    lines += _matrix_lines(rep.matrix)
    lines.append(f"verdict {rep.verdict}" + (f" (witness {rep.witness})" if rep.witness else ""))
    return payload, lines


def cmd_gram(args):
    sp = _space(args)
    if args.class_file:
        xi = _load_class(sp, args.class_file)
        seed = DEFAULT_SEED if args.seed is None else args.seed
        at = EvalPoint.default(sp.rs.rank, seed)
        payload, lines = _gram_outcome(sp, bilinear_form_xi(sp, xi, at), {"xi": class_to_json(sp, xi)})
        return Outcome(payload, lines, space=sp.name, seed=seed, points=at)
    if args.k is None:
        raise HsxError("--k or --class is required")
    payload, lines = _gram_outcome(sp, gram_matrix(sp, args.k))
    return Outcome(payload, lines, space=sp.name)


def cmd_eff(args):
    sp = _space(args)
    k, reports = eff(sp)
    payload = {"dim": sp.dim, "eff": k, "coeff": sp.dim - k,
               "scan": [{"k": r.k, "verdict": r.verdict, "witness": r.witness} for r in reports]}
    return Outcome(payload, [str(k)], space=sp.name)


def cmd_cumbersome(args):
    sp = _space(args)
    c = _load_class(sp, args.class_file)
    ok = is_cumbersome(sp, c)
    return Outcome({"class": class_to_json(sp, c), "cumbersome": ok},
                   ["true" if ok else "false"], space=sp.name)


def cmd_oracle_triple(args):
    sp = _space(args)
    w = _rep(sp, args.w, "--w")
    v = _rep(sp, args.v, "--v")
    seed = DEFAULT_SEED if args.seed is None else args.seed
    at = EvalPoint.default(sp.rs.rank, seed)
    if args.class_file:
        xi = _load_class(sp, args.class_file)
        loc = integrate(sp, [w, v, xi], at)
        payload = {"w": sp.word(w), "v": sp.word(v), "xi": class_to_json(sp, xi),
                   "localization": loc, "chevalley": None, "agree": None}
        return Outcome(payload, [f"localization {loc}"], space=sp.name, seed=seed, points=at)
    k = sp.dim - sp.codim(w) - sp.codim(v)
    if args.k is not None and args.k != k:
        raise HsxError(f"--k {args.k} does not complete the degree (need {k})")
    if k < 0:
        raise HsxError("codimensions of w and v exceed dim")
    loc = integrate(sp, [w, v], at, h_power=k)
    chev = pair_complementary(sp, h_mult_power(sp, schubert_class(sp, w), k), schubert_class(sp, v))
    payload = {"w": sp.word(w), "v": sp.word(v), "k": k, "localization": loc,
               "chevalley": chev, "agree": loc == chev}
    lines = [f"k {k}", f"localization {loc}", f"chevalley {chev}", f"agree {loc == chev}"]
    return Outcome(payload, lines, ok=loc == chev, space=sp.name, seed=seed, points=at)


# -- adjoint commands ----------------------------------------------------------------


def _model(args, prefer_node: int | None = None):
    if not args.type:
        raise HsxError("--type is required")
    kind = args.kind
    if kind is None and prefer_node is not None:
        series, rank = adj._split_type(args.type)
        rs = adj.build_root_system(series, rank)
        for k in (adj.ADJOINT, adj.COADJOINT):
            try:
                if adj.model_node(rs, k)[0] == prefer_node:
                    kind = k
                    break
            except HsxError:
                continue
    return adj.model_from_type(args.type, kind or adj.ADJOINT)


def _root(root) -> str:
    return "(" + ",".join(map(str, root)) + ")"


def cmd_adjoint_build(args):
    m = _model(args)
    sp = m.space
    payload = {
        "kind": m.kind, "node": m.node, "scale": m.scale, "top_root": list(m.top_root),
        "relevant_simples": m.relevant_simples, "middle_codim": m.middle,
        "pairs": [list(p) for p in m.pairs],
        "simple_classes": {str(i): sp.word(w) for i, w in m.simple_class.items()},
        "negative_simple_classes": {str(i): sp.word(w) for i, w in m.neg_class.items()},
        "sigma_check": {"reps": m.sigma_report["reps"],
                        "mismatches": len(m.sigma_report["mismatches"]),
                        "literal_sign_matches": m.sigma_report["literal_matches"]},
        "classes": [{"w": sp.word(i), "root": list(r)} for i, r in enumerate(m.class_to_root)],
    }
    lines = [f"model {m.name}", f"top root {_root(m.top_root)} = {m.scale}*omega_{m.node}",
             f"relevant simples {m.relevant_simples}", f"middle codim {m.middle}",
             f"pairs {m.pairs}",
             f"stabiliser formula: {m.sigma_report['reps']} reps, "
             f"{len(m.sigma_report['mismatches'])} mismatches"]
    return Outcome(payload, lines, space=sp.name)


def cmd_adjoint_coeffs(args):
    m = _model(args)
    sp = m.space
    table = adj.chevalley_table(m)
    tb = adj.trans_bis_pairs(m)
    md = adj.middle_data(m, adj.default_Y(m))
    ok = all(r["admissible"] and r["disjoint"] and r["reflection"] for r in tb)
    ok = ok and md.d_identity and md.a_identity
    payload = {
        "table": [{"u": i, "u2": j, "coeff": c} for (i, j), c in table.items()],
        "trans_bis": tb,
        "middle_data": {"x": {str(i): v for i, v in md.x.items()},
                        "d": {str(i): v for i, v in md.d.items()},
                        "d_identity": md.d_identity, "a_identity": md.a_identity,
                        "a_identity_literal": md.a_identity_literal},
    }
    rel = m.relevant_simples
    lines = ["coefficient of s(-a_j) in h*s(a_i), rows i, columns j " + str(rel)]
    lines += ["  " + " ".join(str(table[(i, j)]) for j in rel) for i in rel]
    for r in tb:
        lines.append(f"a_{r['simple']}: w={','.join(map(str, r['w']))} v={','.join(map(str, r['v']))} "
                     f"admissible={r['admissible']} disjoint={r['disjoint']} dual={r['dual']}")
    lines.append(f"d identity {md.d_identity}, x = a identity {md.a_identity}")
    return Outcome(payload, lines, ok=ok, space=sp.name)


def cmd_adjoint_qform(args):
    m = _model(args)
    q = adj.q_form(m)
    Q = adj.Q_matrix(m)
    L = adj.L_coords(m)
    payload = {"q": str(q), "pairs": [list(p) for p in m.pairs],
               "Q": [[str(x) for x in row] for row in Q],
               "L": {f"{a},{b}": str(v) for (a, b), v in L.items()}}
    lines = [f"q = {q}", f"pairs {m.pairs}", "Q"] + _matrix_lines(Q)
    lines += [f"L({a},{b}) = {v}" for (a, b), v in L.items()]
    return Outcome(payload, lines, space=m.space.name)


def cmd_adjoint_posdef(args):
    m = _model(args)
    seed = 0 if args.seed is None else args.seed
    rep = adj.check_posdef(m, samples=args.samples, seed=seed, raise_on_failure=False)
    lines = [f"samples {rep.samples}", f"failures {rep.failures}",
             f"displayed-matrix failures {rep.literal_failures}", f"tier {rep.tier}"]
    lines += [f"minor {i + 1}: {c}" for i, c in enumerate(rep.certificate)]
    if rep.witness:
        lines.append(f"witness {rep.witness}")
    return Outcome(rep.to_dict(), lines, ok=rep.failures == 0, space=m.space.name, seed=seed)


def cmd_adjoint_qidentity(args):
    m = _model(args)
    reps = adj.q_identity_report(m)
    qq = adj.q_equals_q_prime(m)
    completed = next(r for r in reps if r.variant == "completed")
    payload = {"variants": [r.to_dict() for r in reps], "q_equals_q_prime": qq}
    lines = [f"{r.variant}: {'holds' if r.holds else 'fails'}" for r in reps]
    lines.append(f"q = q': {qq}")
    return Outcome(payload, lines, ok=completed.holds and qq, space=m.space.name)


def cmd_adjoint_bndet(args):
    if not args.type:
        raise HsxError("--type is required (e.g. B4 or C4)")
    series, n = adj._split_type(args.type)
    try:
        ok, value = adj.bn_cn_determinant(n, series)
    except FormulaMismatch as exc:
        return Outcome({"n": n, "series": series, "matches": False, "error": str(exc)},
                       [f"mismatch: {exc}"], ok=False)
    return Outcome({"n": n, "series": series, "matches": ok, "det": str(value)},
                   [f"det Q = {value}", "matches closed form"])


def cmd_adjoint_sigma(args):
    m = _model(args, prefer_node=2)
    seed = DEFAULT_SEED if args.seed is None else args.seed
    at = EvalPoint.default(m.rs.rank, seed)
    rep = adj.coadjoint_sigma_checks(m, at)
    lines = [f"{k} {v}" for k, v in rep.items()]
    return Outcome(rep, lines, ok=rep["pass"], space=m.space.name, seed=seed, points=at)


def cmd_adjoint_mmatrix(args):
    m = _model(args)
    Y = _load_class(m.space, args.class_file) if args.class_file else adj.default_Y(m)
    res = adj.m_matrix(m, Y)
    M = res["matrix"]
    payload = {"columns": res["columns"],
               "matrix": [[str(M[i, j]) for j in range(M.cols)] for i in range(M.rows)],
               "left_minors": [str(x) for x in res["left_minors"]],
               "minors": [str(x) for x in res["minors"]],
               "rank_one": res["rank_one"], "left_rank_one": res["left_rank_one"]}
    lines = ["columns " + " ".join(res["columns"])]
    lines += ["  " + " ".join(str(M[i, j]) for j in range(M.cols)) for i in range(M.rows)]
    lines.append("left minors " + ", ".join(payload["left_minors"]))
    lines.append(f"rank one (generic y, z): {res['rank_one']}")
    return Outcome(payload, lines, space=m.space.name)


# -- table ---------------------------------------------------------------------------


def _threads() -> int:
    raw = os.environ.get("HSX_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise HsxError(f"HSX_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise HsxError(f"HSX_THREADS must be a positive integer, got {raw!r}")
    return n


def _progress(space, rep):
    print(f"  {space.name}: k={rep.k} {rep.verdict}", file=sys.stderr, flush=True)


def cmd_table_eff(args):
    workers = _threads()
    if args.type:
        rows = [tbl.row_for(_space(args).name)]
    else:
        rows = tbl.default_rows(big=args.big)
    progress = _progress if args.big else None
    results = []
    if workers > 1:
        results = tbl.run_table(rows, workers=workers)
    else:
        for r in rows:
            if args.big and r.big:
                print(f"{r.descriptor} ...", file=sys.stderr, flush=True)
            results.append(tbl.run_row(r, progress if r.big else None))
    lines = [f"{'X':<16} {'space':<8} {'dim':>4} {'eff':>4} {'expected':>9}  status"]
    for res in results:
        if res.error:
            lines.append(f"{res.row.label:<16} {res.row.descriptor:<8} error: {res.error}  FAIL")
            continue
        lines.append(f"{res.row.label:<16} {res.row.descriptor:<8} {res.dim:>4} {res.computed:>4} "
                     f"{res.expected:>9}  {'PASS' if res.passed else 'FAIL'}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} PASS")
    payload = {"rows": [r.to_dict() for r in results], "passed": passed, "total": len(results)}
    return Outcome(payload, lines, ok=passed == len(results))


# -- parser --------------------------------------------------------------------------


SPACE_HANDLERS = {
    "describe": cmd_describe, "strata": cmd_strata, "dual": cmd_dual,
    "stabilizer": cmd_stabilizer, "admissible": cmd_admissible, "mingen": cmd_mingen,
    "chevalley": cmd_chevalley, "gram": cmd_gram, "eff": cmd_eff, "cumbersome": cmd_cumbersome,
}
ADJOINT_HANDLERS = {
    "build": cmd_adjoint_build, "coeffs": cmd_adjoint_coeffs, "qform": cmd_adjoint_qform,
    "posdef": cmd_adjoint_posdef, "qidentity": cmd_adjoint_qidentity, "bndet": cmd_adjoint_bndet,
    "sigma-checks": cmd_adjoint_sigma, "mmatrix": cmd_adjoint_mmatrix,
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", help="Lie type such as B3, or a full descriptor such as B3/P2")
    p.add_argument("--node", help="marked node(s), Bourbaki numbering, e.g. 2 or 1,3")
    p.add_argument("--kind", choices=[adj.ADJOINT, adj.COADJOINT])
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int, help="codimension")
    p.add_argument("--w", help="reduced word, comma separated")
    p.add_argument("--v", help="reduced word, comma separated")
    p.add_argument("--class", dest="class_file", metavar="FILE", help="class as JSON")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--big", action="store_true", help="include the E7/E8 rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsx", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hsx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    space = sub.add_parser("space", help="operations on one G/P")
    space_sub = space.add_subparsers(dest="action", required=True)
    for name, fn in SPACE_HANDLERS.items():
        p = space_sub.add_parser(name)
        _common(p)
        p.set_defaults(handler=fn)
    # the space operations are also reachable without the "space" prefix
    for name, fn in SPACE_HANDLERS.items():
        if name == "describe":
            continue
        p = sub.add_parser(name)
        _common(p)
        p.set_defaults(handler=fn)

    oracle = sub.add_parser("oracle", help="localization cross-checks")
    oracle_sub = oracle.add_subparsers(dest="action", required=True)
    p = oracle_sub.add_parser("triple")
    _common(p)
    p.set_defaults(handler=cmd_oracle_triple)

    adjoint = sub.add_parser("adjoint", help="adjoint and coadjoint varieties")
    adjoint_sub = adjoint.add_subparsers(dest="action", required=True)
    for name, fn in ADJOINT_HANDLERS.items():
        p = adjoint_sub.add_parser(name)
        _common(p)
        p.set_defaults(handler=fn)

    table = sub.add_parser("table", help="regenerate known tables")
    table_sub = table.add_subparsers(dest="action", required=True)
    p = table_sub.add_parser("eff")
    _common(p)
    p.set_defaults(handler=cmd_table_eff)
    return parser


def _emit(args, out: Outcome) -> None:
    if args.json:
        doc = {
            "tool_version": __version__,
            "space": out.space,
            "seed": out.seed,
            "eval_points": out.points.to_dict() if out.points else None,
            "ok": out.ok,
        }
        doc.update(out.payload)
        print(json.dumps(doc, indent=2, default=str))
    else:
        print("\n".join(out.lines))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.samples is not None and args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return 2
    try:
        out = args.handler(args)
    except PROPERTY_FAILURES as exc:
        print(f"property failure: {exc}", file=sys.stderr)
        return 1
    except HsxError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(args, out)
    return 0 if out.ok else 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
