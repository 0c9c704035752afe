"""Command-line interface.

Subcommands: model build | model validate, report, chern, cs, relations,
primitive, audit, conformal-coeffs.  Every pathway is a thin composition of
library calls; reports go to stdout (JSON under --json), diagnostics to
stderr.  Exit codes: 0 success, 1 mathematical not-exact under
--expect-exact, 2 usage or schema errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .charforms import (chern_forms, chern_simons_form, cs_class, chern_form_of)
from .forms import Form, Grade, ce_differential, quotient_d
from .invariants import PolyParseError, parse_poly
from .model import LieModel, Part, validate_model
from .modelio import ModelSchemaError, emit_model_json, parse_model_file
from .models import FAMILIES, build_model
from .relations import (conformal_coefficients, exactness_audit, find_primitive,
                        find_relations, is_closed, partition_label)

NATURAL_GRADE = {Part.MINUS: (1, 0, 0), Part.ZERO: (0, 1, 0), Part.PLUS: (0, 0, 1)}


def structure_report(m: LieModel) -> dict:
    """Full and quotient differentials of every dual generator at its natural
    grade."""
    rows = []
    for gen in m.generators:
        xi = Form.dual(gen.gid)
        grade = Grade(*NATURAL_GRADE[gen.part])
        rows.append({
            "name": gen.name,
            "part": gen.part.name.lower(),
            "index": gen.index,
            "d": ce_differential(m, xi).to_json(m),
            "quotient_d": quotient_d(m, xi, grade).to_json(m),
        })
    return {"dims": list(m.dims), "generators": rows}


def _model_args(sub: argparse.ArgumentParser):
    sub.add_argument("model", help="family name (%s) or a model JSON file path"
                     % "|".join(sorted(FAMILIES)))
    sub.add_argument("--n", type=int, help="rank parameter for projective/conformal/lagrangian")
    sub.add_argument("--p", type=int, help="first block size")
    sub.add_argument("--q", type=int, help="second block size")
    sub.add_argument("--o-weights", type=str, default=None,
                     help="comma-separated line-module weights (projective only)")


def _load_model(args) -> LieModel:
    token = args.model
    if token in FAMILIES:
        params = {}
        if token in ("projective", "conformal", "lagrangian"):
            if args.n is None:
                raise SystemExit2(f"family {token!r} needs --n")
            params["n"] = args.n
        if token in ("grassmannian", "foliated", "split"):
            if args.p is None or args.q is None:
                raise SystemExit2(f"family {token!r} needs --p and --q")
            params["p"], params["q"] = args.p, args.q
        if token == "projective" and args.o_weights:
            params["o_weights"] = tuple(int(x) for x in args.o_weights.split(","))
        return build_model(token, **params)
    if os.path.exists(token):
        return parse_model_file(token)
    raise SystemExit2(f"unknown model family or missing file: {token!r}")


class SystemExit2(Exception):
    pass


def _emit(args, obj: dict, text_lines: list[str]):
    if getattr(args, "json", False):
        print(json.dumps(obj, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _pretty_form(m: LieModel, form: Form) -> str:
    return form.pretty(m)


def cmd_model(args) -> int:
    if args.action == "build":
        m = _load_model(args)
        text = emit_model_json(m)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    m = _load_model(args)
    report = validate_model(m)
    obj = {"ok": report.ok, "failures": report.failures}
    _emit(args, obj, ["ok" if report.ok else "FAILED"]
          + [f"  {f['check']}: {f['detail']}" for f in report.failures])
    return 0 if report.ok else 1


def cmd_report(args) -> int:
    m = _load_model(args)
    report = structure_report(m)
    lines = []
    for gen in m.generators:
        xi = Form.dual(gen.gid)
        grade = Grade(*NATURAL_GRADE[gen.part])
        lines.append(f"d({gen.name}) = {_pretty_form(m, ce_differential(m, xi))}")
        lines.append(f"dq({gen.name}) = {_pretty_form(m, quotient_d(m, xi, grade))}")
    _emit(args, report, lines)
    return 0


def cmd_chern(args) -> int:
    m = _load_model(args)
    rep = _rep_of(m, args.rep)
    k_max = min(args.max, rep.dim)
    cs = chern_forms(m, rep, k_max)
    obj = {"model": m.meta.get("family", "file"), "rep": rep.label,
           "forms": {f"c{k}": c.to_json(m) for k, c in enumerate(cs, start=1)}}
    _emit(args, obj, [f"c{k} = {_pretty_form(m, c)}" for k, c in enumerate(cs, start=1)])
    return 0


def cmd_cs(args) -> int:
    m = _load_model(args)
    rep = _rep_of(m, args.rep)
    try:
        poly = parse_poly(args.poly)
    except PolyParseError as e:
        raise SystemExit2(str(e))
    t_form, grade = cs_class(m, rep, poly)
    obj = {"poly": args.poly, "grade": list(grade.as_tuple()),
           "cs_class": t_form.to_json(m)}
    lines = [f"grade = {grade.as_tuple()}", f"cs_class = {_pretty_form(m, t_form)}"]
    if args.full:
        full = chern_simons_form(m, rep, poly)
        obj["chern_simons_form"] = full.to_json(m)
        lines.append(f"chern_simons_form = {_pretty_form(m, full)}")
    _emit(args, obj, lines)
    return 0


def cmd_relations(args) -> int:
    m = _load_model(args)
    rep = _rep_of(m, args.rep)
    rels = find_relations(m, rep, args.degree, modulo_exact=args.modulo_exact)
    obj = {"relations": [r.to_json() for r in rels]}
    lines = []
    for r in rels:
        bits = []
        for mon, c in r.nonzero():
            sign = "-" if c < 0 and bits else ("+" if bits else ("-" if c < 0 else ""))
            bits.append(f"{sign} {abs(c)}*{partition_label(mon)}".strip())
        lines.append(" ".join(bits) + " = 0")
    _emit(args, obj, lines or ["no relations"])
    return 0


def cmd_primitive(args) -> int:
    m = _load_model(args)
    rep = _rep_of(m, args.rep)
    try:
        poly = parse_poly(args.target)
    except PolyParseError as e:
        raise SystemExit2(str(e))
    if args.chern_form:
        xi = chern_form_of(m, rep, poly)
        grade = Grade(poly.degree, 0, poly.degree)
    else:
        xi, grade = cs_class(m, rep, poly)
    closed, residual = is_closed(m, xi, grade)
    if not closed:
        print(f"warning: target is not closed at grade {grade.as_tuple()}", file=sys.stderr)
    res = find_primitive(m, xi, grade, invariant_only=not args.no_invariant,
                         min_minus=args.min_minus)
    obj = {
        "target": args.target,
        "grade": list(grade.as_tuple()),
        "primitive": res.psi.to_json(m) if res.exact else "not_exact",
        "certificate": {k: v for k, v in res.certificate.items()},
        "searched_dimension": res.searched_dimension,
    }
    lines = [f"grade = {grade.as_tuple()}"]
    if res.exact:
        lines.append(f"primitive = {_pretty_form(m, res.psi)}")
    else:
        lines.append(f"not exact; certificate = {res.certificate}")
    _emit(args, obj, lines)
    if not res.exact and args.expect_exact:
        return 1
    return 0


def cmd_audit(args) -> int:
    m = _load_model(args)
    rep = _rep_of(m, args.rep)
    report = exactness_audit(m, rep, args.max)
    obj = {
        "rep": report["rep"],
        "degrees": [
            {k: (v.to_json(m) if isinstance(v, Form) else v) for k, v in row.items()}
            for row in report["degrees"]
        ],
    }
    lines = []
    for row in report["degrees"]:
        verdict = "zero form" if row["chern_form_zero"] else (
            "exact" if row["exact"] else "NOT exact")
        lines.append(f"c{row['k']}: {verdict}")
    _emit(args, obj, lines)
    if args.expect_exact and any(not row["exact"] for row in report["degrees"]):
        return 1
    return 0


def cmd_conformal_coeffs(args) -> int:
    coeffs = conformal_coefficients(args.n)
    obj = {"n": args.n, "coefficients": [str(c) for c in coeffs]}
    _emit(args, obj, [" ".join(str(c) for c in coeffs)])
    return 0


def _rep_of(m: LieModel, label: str):
    if label not in m.reps:
        raise SystemExit2(f"model has no rep {label!r}; available: {sorted(m.reps)}")
    return m.reps[label]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cartan-invariants",
                                 description="Exact characteristic forms of "
                                             "homogeneous Cartan-geometry models")
    sub = ap.add_subparsers(dest="command", required=True)

    p_model = sub.add_parser("model", help="build or validate model files")
    p_model.add_argument("action", choices=["build", "validate"])
    _model_args(p_model)
    p_model.add_argument("-o", "--output", default=None)
    p_model.add_argument("--json", action="store_true")
    p_model.set_defaults(fn=cmd_model)

    p_report = sub.add_parser("report", help="structure equations of a model")
    _model_args(p_report)
    p_report.add_argument("--json", action="store_true")
    p_report.set_defaults(fn=cmd_report)

    p_chern = sub.add_parser("chern", help="Chern forms of a module")
    _model_args(p_chern)
    p_chern.add_argument("--rep", required=True)
    p_chern.add_argument("--max", type=int, default=5)
    p_chern.add_argument("--json", action="store_true")
    p_chern.set_defaults(fn=cmd_chern)

    p_cs = sub.add_parser("cs", help="transgression class of an invariant polynomial")
    _model_args(p_cs)
    p_cs.add_argument("--rep", required=True)
    p_cs.add_argument("--poly", required=True)
    p_cs.add_argument("--full", action="store_true",
                      help="also emit the full transgression form")
    p_cs.add_argument("--json", action="store_true")
    p_cs.set_defaults(fn=cmd_cs)

    p_rel = sub.add_parser("relations", help="exact relations among Chern forms")
    _model_args(p_rel)
    p_rel.add_argument("--rep", required=True)
    p_rel.add_argument("--degree", type=int, required=True)
    p_rel.add_argument("--modulo-exact", action="store_true",
                       help="relations in the quotient cohomology instead of "
                            "strict form equality")
    p_rel.add_argument("--json", action="store_true")
    p_rel.set_defaults(fn=cmd_relations)

    p_prim = sub.add_parser("primitive", help="solve for a transgression primitive")
    _model_args(p_prim)
    p_prim.add_argument("--rep", default="tangent")
    p_prim.add_argument("--target", required=True,
                        help="invariant polynomial, e.g. '5^5*c5-3*c1^5'")
    p_prim.add_argument("--chern-form", action="store_true",
                        help="target the Chern form of the polynomial instead of "
                             "its transgression class")
    p_prim.add_argument("--min-minus", type=int, default=0)
    p_prim.add_argument("--no-invariant", action="store_true")
    p_prim.add_argument("--expect-exact", action="store_true")
    p_prim.add_argument("--json", action="store_true")
    p_prim.set_defaults(fn=cmd_primitive)

    p_audit = sub.add_parser("audit", help="exactness audit of a g-module restriction")
    _model_args(p_audit)
    p_audit.add_argument("--rep", required=True)
    p_audit.add_argument("--max", type=int, default=None)
    p_audit.add_argument("--expect-exact", action="store_true")
    p_audit.add_argument("--json", action="store_true")
    p_audit.set_defaults(fn=cmd_audit)

    p_cc = sub.add_parser("conformal-coeffs",
                          help="coefficients of the conformal generating function")
    p_cc.add_argument("--n", type=int, required=True)
    p_cc.add_argument("--json", action="store_true")
    p_cc.set_defaults(fn=cmd_conformal_coeffs)

    return ap


def run(argv: list[str]) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SystemExit2 as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ModelSchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
