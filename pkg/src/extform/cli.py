"""``extform`` command line.

Reports are ``key: value`` lines.  Exit status: 0 when the operation succeeds
or the checked claim holds, 1 when the claim fails, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import models, verify
from .core import AffineMapSpec, VPoly
from .ef import (AugmentationSpec, AugmentationStatus, as_hpoly, augmentation_status,
                 check_ef, classify_relationship, construct_mutual_augmentation,
                 independent_spaces)
from .lp import LinProgram, solve
from .polyhedron import UnboundedError, enumerate_vertices, hull
from .projection import project, pushforward_objective
from .rational import format_rational, parse_rational
from .textio import ModelFile, TextFormatError, format_model, parse_model

OK, FAIL, USAGE = 0, 1, 2


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str):
        self.lines: list[str] = [f"command: {command}"]
        self.model: Optional[str] = None

    def __setitem__(self, key: str, value):
        self.lines.append(f"{key}: {_value(value)}")

    def emit(self, out, model_out: Optional[str] = None):
        out.write("\n".join(self.lines) + "\n")
        if self.model is not None:
            if model_out:
                Path(model_out).write_text(self.model)
            else:
                out.write("\n" + self.model)


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_value(x) for x in v) + ")"
    if v is None:
        return "none"
    if isinstance(v, (int, Fraction)):
        return format_rational(v)
    return str(v)


def _load(path: str, report: Report, role: str, kinds: Sequence[str]) -> ModelFile:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    report[f"input.{role}"] = f"{path} sha256={hashlib.sha256(data).hexdigest()}"
    try:
        mf = parse_model(data.decode("utf-8"))
    except (TextFormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None
    if mf.kind not in kinds:
        raise InputError(f"{path}: expected {' or '.join(kinds)}, got {mf.kind}")
    return mf


def _poly(path, report, role):
    return _load(path, report, role, ("hpoly", "vpoly")).model


def _hpoly(path, report, role):
    return as_hpoly(_poly(path, report, role))


def _vector(text: str) -> tuple:
    try:
        return tuple(parse_rational(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------- commands

def cmd_vertices(args, rep: Report) -> int:
    p = _poly(args.file, rep, "poly")
    if isinstance(p, VPoly):
        p = hull(p)
    try:
        v = enumerate_vertices(p)
    except UnboundedError as exc:
        rep["bounded"] = False
        rep["ray"] = exc.ray
        rep["summary"] = "polyhedron is unbounded; no finite vertex set"
        return FAIL
    rep["bounded"] = True
    rep["vertex_count"] = len(v.vertices)
    for k, x in enumerate(v.vertices, 1):
        rep[f"vertex.{k}"] = x
    rep["summary"] = f"{len(v.vertices)} vertices"
    return OK


def cmd_hull(args, rep: Report) -> int:
    v = _load(args.file, rep, "poly", ("vpoly",)).model
    h = hull(v)
    rep["rows"] = h.nrows
    rep["summary"] = f"hull has {h.nrows} rows"
    rep.model = format_model(h, args.name)
    return OK


def cmd_project(args, rep: Report) -> int:
    p = _hpoly(args.file, rep, "poly")
    keep = [k for k in args.keep.replace(",", " ").split() if k]
    res = project(p, keep)
    rep["keep"] = " ".join(keep)
    rep["projection"] = str(res)
    if res.is_empty:
        rep["farkas"] = res.witness
    elif res.kind.name == "POLYHEDRON":
        rep.model = format_model(res.poly, args.name)
    rep["summary"] = f"projection onto {' '.join(keep)} is {res}"
    return OK


def _lp_report(rep: Report, out) -> int:
    rep["status"] = out.status.value
    if out.optimal:
        rep["optimum"] = out.optimum
        rep["point"] = out.point
        rep["dual"] = out.dual
        rep["summary"] = f"optimum {format_rational(out.optimum)}"
        return OK
    if out.infeasible:
        rep["farkas"] = out.dual
        rep["summary"] = "infeasible"
    else:
        rep["point"] = out.point
        rep["ray"] = out.ray
        rep["summary"] = "unbounded"
    return FAIL


def cmd_minimize(args, rep: Report) -> int:
    p = _hpoly(args.file, rep, "poly")
    c = _vector(args.objective)
    if len(c) != p.dim:
        raise InputError(f"objective has {len(c)} entries, polyhedron has {p.dim} columns")
    return _lp_report(rep, solve(LinProgram(c, p)))


def cmd_solve_lp(args, rep: Report) -> int:
    lp = _load(args.file, rep, "lp", ("lp",)).model
    return _lp_report(rep, solve(lp))


def cmd_check_ef(args, rep: Report) -> int:
    target = _poly(args.target, rep, "target")
    cand = _hpoly(args.candidate, rep, "candidate")
    witness = _load(args.map, rep, "map", ("map",)).model if args.map else None
    d = args.definition
    if d == 2 and witness is None:
        raise InputError("--def 2 needs --map")
    try:
        v = check_ef(target, cand, d, witness)
    except UnboundedError:
        raise InputError("definition 2 needs a bounded candidate") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["definition"] = d
    if d == 1:
        rep["projection"] = str(v.projection)
        holds = v.def1
    elif d == 2:
        holds = v.def2_holds
    else:
        holds = v.def3
        for key in ("def3_unliftable_point", "def3_outside_point"):
            if key in v.notes:
                rep[key.replace("def3_", "")] = v.notes[key]
    rep["holds"] = holds
    rep["summary"] = ("candidate is" if holds else "candidate is not") + \
        f" an extended formulation of target under definition {d}"
    return OK if holds else FAIL


def cmd_check_augmentation(args, rep: Report) -> int:
    base = _hpoly(args.base, rep, "base")
    cand = _hpoly(args.candidate, rep, "candidate")
    try:
        status = augmentation_status(base, cand)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["status"] = status.value
    rep["augments"] = status is AugmentationStatus.AUGMENTS
    rep["summary"] = status.value
    return OK if status is AugmentationStatus.AUGMENTS else FAIL


def cmd_check_independent(args, rep: Report) -> int:
    p = _poly(args.first, rep, "first")
    q = _poly(args.second, rep, "second")
    ind = independent_spaces(p, q)
    rep["independent"] = ind
    rep["summary"] = "independent spaces" if ind else "overlapping spaces"
    return OK if ind else FAIL


def cmd_classify(args, rep: Report) -> int:
    p = _poly(args.first, rep, "first")
    q = _poly(args.second, rep, "second")
    maps = [_load(m, rep, f"map.{k}", ("map",)).model for k, m in enumerate(args.map or [], 1)]
    rel = classify_relationship(p, q, maps)
    rep["independent"] = rel.independent
    for tag, v in (("second_of_first", rel.forward), ("first_of_second", rel.backward)):
        rep[f"{tag}.def1"] = v.def1
        rep[f"{tag}.def2"] = v.def2_holds
        rep[f"{tag}.def3"] = v.def3
    rep["class"] = rel.tag.value
    if rel.caveat:
        rep["caveat"] = rel.caveat
    rep["summary"] = rel.tag.value
    return OK


def cmd_augment_pair(args, rep: Report) -> int:
    p1 = _hpoly(args.first, rep, "first")
    p2 = _hpoly(args.second, rep, "second")
    spec: AugmentationSpec = _load(args.spec, rep, "spec", ("augspec",)).model
    try:
        w = construct_mutual_augmentation(p1, p2, spec, args.slack)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["rows"] = w.nrows
    rep["dim"] = w.dim
    rep["verified"] = True
    rep["summary"] = "combined polytope projects onto both inputs"
    rep.model = format_model(w, args.name)
    return OK


def cmd_pushforward(args, rep: Report) -> int:
    m: AffineMapSpec = _load(args.map, rep, "map", ("map",)).model
    alpha = _vector(args.alpha)
    try:
        coeffs, const = pushforward_objective(alpha, m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["coefficients"] = coeffs
    rep["constant"] = const
    rep["summary"] = "objective rewritten over the map's domain"
    return OK


GENERATORS = {
    "tsp-standard": lambda n: models.gen_standard_tsp(n),
    "tsp-alternate": lambda n: models.gen_alternate_tsp(n),
    "mst-edmonds": lambda n: models.gen_mst_edmonds(n)[1],
    "mst-martin": lambda n: models.gen_mst_martin(n),
    "mst-martin-reduced": lambda n: models.gen_mst_martin_reduced(n)[1],
}


def cmd_gen(args, rep: Report) -> int:
    try:
        m = GENERATORS[args.family](args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep["family"] = args.family
    rep["n"] = args.n
    rep["summary"] = f"generated {args.family} for n={args.n}"
    rep.model = format_model(m, args.name or f"{args.family}-{args.n}")
    return OK


def cmd_verify_paper(args, rep: Report) -> int:
    names = list(verify.CHECKS)
    if args.filter:
        names = [n for n in names if args.filter in n]
        if not names:
            raise InputError(f"no check matches {args.filter!r}")
    rep["seed"] = args.seed
    results = verify.run(names, args.seed)
    for r in results:
        rep[f"{r.name}.status"] = "pass" if r.ok else "FAIL"
        for k, v in r.details.items():
            rep[f"{r.name}.{k}"] = v
    passed = sum(r.ok for r in results)
    rep["summary"] = f"{passed}/{len(results)} checks passed"
    return OK if passed == len(results) else FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="extform", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write any produced model to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("vertices", cmd_vertices, "enumerate vertices of a bounded polyhedron")
    p.add_argument("file")
    p = add("hull", cmd_hull, "H-description of a vpoly")
    p.add_argument("file")
    p.add_argument("--name", default="hull")
    p = add("project", cmd_project, "Fourier-Motzkin projection onto some classes")
    p.add_argument("file")
    p.add_argument("--keep", required=True, help="class labels, comma or space separated")
    p.add_argument("--name", default="projection")
    p = add("minimize", cmd_minimize, "minimize a linear objective over a polyhedron")
    p.add_argument("file")
    p.add_argument("--objective", required=True)
    p = add("solve-lp", cmd_solve_lp, "solve an lp file")
    p.add_argument("file")
    p = add("check-ef", cmd_check_ef, "test one EF definition")
    p.add_argument("--def", dest="definition", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--candidate", required=True)
    p.add_argument("--map")
    p = add("check-augmentation", cmd_check_augmentation, "does candidate augment base?")
    p.add_argument("--base", required=True)
    p.add_argument("--candidate", required=True)
    p = add("check-independent", cmd_check_independent, "are two polytopes in independent spaces?")
    p.add_argument("first")
    p.add_argument("second")
    p = add("classify", cmd_classify, "relationship class of two polytopes")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--map", action="append", help="candidate image map (repeatable)")
    p = add("augment-pair", cmd_augment_pair, "build a polytope augmenting both inputs")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--spec", required=True)
    p.add_argument("--slack", default="u", help="class label of the coupling slacks")
    p.add_argument("--name", default="combined")
    p = add("pushforward", cmd_pushforward, "rewrite an objective through x = C y + b")
    p.add_argument("--alpha", required=True)
    p.add_argument("--map", required=True)
    p = add("gen", cmd_gen, "generate a model family")
    p.add_argument("family", choices=sorted(GENERATORS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--name")
    p = add("verify-paper", cmd_verify_paper, "run the reproduction suite")
    p.add_argument("--filter")
    p.add_argument("--seed", type=int, default=0)
    return ap


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return USAGE if exc.code else OK
    rep = Report(args.command)
    try:
        code = args.func(args, rep)
    except InputError as exc:
        rep["error"] = exc
        rep.emit(out)
        err.write(f"extform: {exc}\n")
        return USAGE
    rep.emit(out, args.out)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
