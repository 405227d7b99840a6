"""Command line front end: ``opcat <subcommand> ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error,
3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from . import builders
from .core import CapExceeded, FinFunction, ValidationReport, empty_category, free_arrow, point
from .normalization import (ft_subcategory, hopf_sufficient_check, left_normal_check,
                            random_presheaf, validate_presheaf, wedge_bijectivity_check)
from .ocjson import InputError, dump, parse_category, parse_operad, parse_presheaf, serialize_category
from .operadic import OperadicCategory, is_genuine, trivial_objects, validate_operadic
from .operads import validate_operad
from .sampling import random_endomap, random_tuple, rng_for
from .skew import (TensorElement, diagnostics, expose_interface, reconstruct, render,
                   same_tables, verify_skew_axioms, ReconstructionError)

BASES = {"poset3": builders.poset3, "arrow": free_arrow, "point": point,
         "empty": empty_category}


def jsonable(x) -> Any:
    if isinstance(x, (TensorElement, FinFunction)):
        return render(x)
    if isinstance(x, (tuple, list)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted(jsonable(v) for v in x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def emit_report(report: ValidationReport, as_json: bool,
                max_witnesses: Optional[int] = None) -> str:
    """Render a report; identical reports render to identical text."""
    fails = report.failures if max_witnesses is None else report.failures[:max_witnesses]
    stats = dict(report.stats)
    if len(fails) < len(report.failures):
        stats["failures_total"] = len(report.failures)
    if as_json:
        return json.dumps({
            "check": report.check,
            "pass": report.passed,
            "witnesses": [{"id": f.check, "message": f.message,
                           "labels": jsonable(f.witness)} for f in fails],
            "stats": jsonable(stats),
        }, ensure_ascii=False)
    lines = [f"check: {report.check}", f"pass: {str(report.passed).lower()}"]
    for k, v in stats.items():
        lines.append(f"  {k}: {json.dumps(jsonable(v), ensure_ascii=False)}")
    for f in fails:
        lines.append(f"  [{f.check}] {f.message}: "
                     + ", ".join(json.dumps(jsonable(w), ensure_ascii=False)
                                 for w in f.witness))
    if len(fails) < len(report.failures):
        lines.append(f"  ... {len(report.failures) - len(fails)} more")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands

def _load_valid(path: str) -> OperadicCategory:
    """Parse and insist on validity; checks on invalid tables are meaningless."""
    oc = parse_category(path)
    rep = validate_operadic(oc)
    if not rep.passed:
        f = rep.failures[0]
        raise InputError(f"{path} is not a valid operadic category: [{f.check}] "
                         f"{f.message} {jsonable(f.witness)}")
    return oc


def cmd_validate(args) -> ValidationReport:
    return validate_operadic(parse_category(args.category))


def cmd_info(args) -> ValidationReport:
    oc = _load_valid(args.category)
    rep = ValidationReport("info")
    d = diagnostics(oc, cap=args.cap)
    gen, gw = is_genuine(oc)
    rep.stats.update({
        "objects": len(oc.objects),
        "morphisms": len(oc.morphisms),
        "trivial": [c for c in oc.objects if c in trivial_objects(oc)],
        "ft_morphisms": len(ft_subcategory(oc).category.morphisms),
        "genuine": gen,
        "genuine_witness": gw,
        "lambda_invertible": d.lambda_invertible,
        "lambda_witness": d.lambda_witness,
        "rho_invertible": d.rho_invertible,
        "rho_witness": d.rho_witness,
        "alpha_invertible": d.alpha_invertible,
        "alpha_witness": d.alpha_witness,
    })
    return rep


def cmd_example(args) -> ValidationReport:
    name = args.name
    base = BASES[args.base]()
    if name == "s":
        oc = builders.build_S(args.max)
    elif name == "p":
        oc = builders.build_P(args.max)
    elif name == "discrete-zero":
        oc = builders.build_discrete_zero(base)
    elif name == "adjoin-terminal":
        oc = builders.build_adjoin_terminal(base)
    elif name == "card-one":
        oc = builders.build_card_one(base)
    elif name == "bouquets":
        oc = builders.build_bouquets([c for c in args.set.split(",") if c], args.max)
    elif name == "omega2":
        oc = builders.build_omega2(*args.max2)
    else:  # argparse restricts the choices
        raise InputError(f"unknown example {name!r}")
    data = serialize_category(oc)
    data["expected_trivial"] = [c for c in oc.objects if c in oc.trivial]
    dump(data, args.output)
    rep = ValidationReport("example")
    rep.stats.update({"name": name, "objects": len(oc.objects),
                      "morphisms": len(oc.morphisms), "output": args.output})
    return rep


def cmd_skew(args) -> ValidationReport:
    oc = _load_valid(args.category)
    rng = rng_for(args.seed)
    rep = ValidationReport("skew-check")
    for _ in range(args.samples):
        W, X, Y, Z = random_tuple(oc, rng, 4, args.max_size, args.density)
        maps = tuple(random_endomap(T, rng) for T in (X, Y, Z))
        rep.merge(verify_skew_axioms(oc, W, X, Y, Z, maps))
    rep.stats["samples"] = args.samples
    return rep


def cmd_operad(args) -> ValidationReport:
    oc = _load_valid(args.category)
    return validate_operad(oc, parse_operad(args.operad, oc))


def cmd_presheaf(args) -> ValidationReport:
    oc = _load_valid(args.category)
    return validate_presheaf(oc, parse_presheaf(args.presheaf, oc))


def cmd_wedge(args) -> ValidationReport:
    oc = _load_valid(args.category)
    rng = rng_for(args.seed)
    samples = [tuple(random_presheaf(oc, rng) for _ in range(3))
               for _ in range(args.samples)]
    rep = wedge_bijectivity_check(oc, samples)
    rep.stats["samples"] = args.samples
    return rep


def cmd_hopf(args) -> ValidationReport:
    oc = _load_valid(args.category)
    for t in args.theta or ():
        if t not in oc.morphisms:
            raise InputError(f"--theta: unknown morphism {t!r}")
    return hopf_sufficient_check(oc, mode=args.omega, cap=args.cap, thetas=args.theta)


def cmd_left_normal(args) -> ValidationReport:
    oc = _load_valid(args.category)
    rep = ValidationReport("left-normal")
    ok, wit = left_normal_check(oc)
    if not ok:
        if len(wit) == 1:
            rep.fail("a", "no morphism to a trivial object", *wit)
        else:
            rep.fail("b", "morphisms to trivial objects are not connected", *wit)
    return rep


def cmd_reconstruct(args) -> ValidationReport:
    oc = _load_valid(args.category)
    rep = ValidationReport("reconstruct")
    try:
        oc2 = reconstruct(expose_interface(oc))
    except ReconstructionError as exc:
        rep.fail(exc.check, str(exc))
        return rep
    rep.stats.update({"objects": len(oc2.objects), "morphisms": len(oc2.morphisms)})
    if not same_tables(oc, oc2):
        rep.fail("iso", "reconstructed tables differ from the source")
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="opcat", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="machine-readable reports")
    sub = ap.add_subparsers(dest="command", required=True)

    def cat_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("category")
        p.set_defaults(fn=fn)
        return p

    cat_cmd("validate", cmd_validate, "check the operadic category axioms")
    p = cat_cmd("info", cmd_info, "trivial objects, fibrewise trivial maps, invertibility")
    p.add_argument("--cap", type=int, default=10 ** 6)

    p = sub.add_parser("example", help="write a built-in example as OCJSON")
    p.add_argument("name", choices=["s", "p", "discrete-zero", "adjoin-terminal",
                                    "card-one", "bouquets", "omega2"])
    p.add_argument("--max", type=int, default=2)
    p.add_argument("--set", default="r,g", help="comma-separated colours")
    p.add_argument("--max2", type=int, nargs=2, default=(3, 2), metavar=("N2", "N1"))
    p.add_argument("--base", choices=sorted(BASES), default="poset3")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_example)

    p = cat_cmd("skew-check", cmd_skew, "skew monoidal axioms on sampled collections")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--density", type=float, default=1.0)

    p = cat_cmd("operad-check", cmd_operad, "operad laws for an operad file")
    p.add_argument("operad")
    p = cat_cmd("presheaf-check", cmd_presheaf, "presheaf / module laws for a presheaf file")
    p.add_argument("presheaf")

    p = cat_cmd("wedge-check", cmd_wedge, "bijectivity of the normalized structure maps")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = cat_cmd("hopf-check", cmd_hopf, "sufficient condition for invertible associativity")
    p.add_argument("--omega", choices=["all", "ft"], default="all")
    p.add_argument("--cap", type=int, default=10 ** 6)
    p.add_argument("--max-witnesses", type=int, default=20)
    p.add_argument("--theta", action="append", help="only this morphism (repeatable)")

    cat_cmd("left-normal", cmd_left_normal, "left normality of the normalization")
    cat_cmd("reconstruct", cmd_reconstruct, "rebuild the category from its tensor")
    return ap


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        rep = args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=err)
        return 2
    except CapExceeded as exc:
        print(f"limit: {exc}", file=err)
        return 3
    print(emit_report(rep, args.json, getattr(args, "max_witnesses", None)), file=out)
    return 0 if rep.passed else 1


def main() -> None:
    sys.exit(run())
