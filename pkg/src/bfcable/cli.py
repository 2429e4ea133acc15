"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or I/O error.
The environment variable BFH_JMAX overrides the truncation bound of the
infinite operation families (default 64).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import paper_objects as po
from .bordered_structures import (TypeAModule, TypeDStructure, mor_complex, validate_type_a,
                                  validate_type_d)
from .checks import CHECKS, run_check
from .coeff_algebra import FreeComplex, chain_of, homology, set_v_zero, validate_complex
from .invariants import (IotaComplex, correction_terms, solve_disk_map_constraints, tau_witness,
                         torsion_order, v0_bar)
from .pairing import box_morphism, box_tensor
from .schema import SchemaError, load_object

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _get(cat, name):
    try:
        return cat.get(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _need(args, *names):
    if len(args.objects) != len(names):
        raise UsageError(f"{args.computation} expects objects: {' '.join(names)}")
    return args.objects


def _result(name, params, value, witness=None):
    out = {"invariant": name, "params": params, "value": value}
    if witness is not None:
        out["witness"] = witness
    return out


def _chain_json(chain):
    return {g: int(p) for g, p in sorted(chain.items())}


# each computation: (args, catalog) -> result dict
def comp_mor_homology(args, cat):
    a, b = _need(args, "SOURCE", "TARGET")
    M = mor_complex(_get(cat, a), _get(cat, b))
    return _result("mor-homology-dim", {"source": a, "target": b}, homology(M.complex).dimension())


def comp_box_homology(args, cat):
    a, d = _need(args, "TYPE-A", "TYPE-D")
    B = box_tensor(_get(cat, a), _get(cat, d))
    H = homology(B.complex)
    value = H.dimension() if B.complex.ring == "F2" else [[g, _num(o)] for g, o in H.profile()]
    return _result("box-homology", {"A": a, "D": d}, value)


def _num(x):
    return "inf" if x == float("inf") else int(x)


def comp_cable_tau(args, cat):
    p = args.p or 2
    A = _get(cat, f"cfa-cable:{p}")
    U, J = _get(cat, "cfd-U"), _get(cat, "cfd-J")
    F = box_morphism(A, po.candidate_map_sum(args.eps1, args.eps2), box_tensor(A, U), box_tensor(A, J))
    cls = F.images["alpha|v"]
    r = tau_witness(_get(cat, f"cfk-cable-J:{p}"), cls)
    params = {"p": p, "eps1": args.eps1, "eps2": args.eps2}
    return _result("tau", params, _num(r.value),
                   {"class": _chain_json(cls), "U^(tau-1) nonzero": r.below_nonzero, "U^tau zero": r.at_zero})


def comp_torsion_order(args, cat):
    (name,) = _need(args, "COMPLEX")
    C = _get(cat, name)
    if not isinstance(C, FreeComplex):
        raise UsageError(f"{name} is not a chain complex")
    if C.ring == "FUV":
        C = set_v_zero(C)
    return _result("torsion-order", {"object": name}, torsion_order(homology(C)))


def comp_surgery_hat(args, cat):
    n = args.n or 1
    B = box_tensor(_get(cat, f"cfa-framed:{n}"), _get(cat, "cfd-J"))
    return _result("surgery-hat-dim", {"n": n}, homology(B.complex).dimension())


def comp_correction_terms(args, cat):
    C = po.a0_J_summand()
    value = {}
    for name in po.INVOLUTIONS:
        IC = IotaComplex(C, po.a0_J_involution(name))
        lo, hi = correction_terms(IC)
        value[name] = {"d_lower": lo, "d_upper": hi, "V0": str(v0_bar(IC))}
    return _result("correction-terms", {}, value)


def comp_disk_maps(args, cat):
    sols = solve_disk_map_constraints()
    return _result("disk-map-solutions", {}, {k: [sorted(p) for p in v] for k, v in sols.items()})


def comp_tau_J(args, cat):
    r = tau_witness(set_v_zero(_get(cat, "cfk-J")), chain_of("e1", "e2"))
    return _result("tau", {"object": "cfk-J", "class": "e1+e2"}, _num(r.value))


def comp_validate(args, cat):
    (name,) = _need(args, "OBJECT")
    obj = _get(cat, name)
    if isinstance(obj, TypeDStructure):
        rep = validate_type_d(obj)
    elif isinstance(obj, TypeAModule):
        rep = validate_type_a(obj)
    else:
        rep = validate_complex(obj)
    return _result("validate", {"object": name}, rep.violations)


COMPUTATIONS = {
    "mor-homology": comp_mor_homology,
    "box-homology": comp_box_homology,
    "cable-tau": comp_cable_tau,
    "torsion-order": comp_torsion_order,
    "surgery-hat": comp_surgery_hat,
    "correction-terms": comp_correction_terms,
    "disk-maps": comp_disk_maps,
    "tau-J": comp_tau_J,
    "validate": comp_validate,
}


def _emit(result, args):
    text = json.dumps(result, indent=2, sort_keys=True, default=str)
    if getattr(args, "json", None):
        Path(args.json).write_text(text + "\n")
    print(text)


def cmd_compute(args, cat) -> int:
    if args.computation not in COMPUTATIONS:
        raise UsageError(f"unknown computation {args.computation!r}; one of {', '.join(COMPUTATIONS)}")
    _emit(COMPUTATIONS[args.computation](args, cat), args)
    return EXIT_OK


def cmd_verify(args, cat) -> int:
    ids = list(CHECKS) if args.all or not args.check else args.check
    unknown = [c for c in ids if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s) {unknown}; known: {', '.join(CHECKS)}")
    results = [run_check(c, cat) for c in sorted(ids, key=list(CHECKS).index)]
    for r in results:
        print(f"{r.status.upper():4}  {r.id:20} [{r.provenance}]  {r.wall_time:.3f}s")
        if r.status != "pass":
            print(f"      expected: {json.dumps(r.expected, default=str)[:400]}")
            print(f"      computed: {json.dumps(r.computed, default=str)[:400]}")
    if args.json:
        try:
            Path(args.json).write_text(json.dumps([r.to_dict() for r in results], indent=2, default=str) + "\n")
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK if all(r.status == "pass" for r in results) else EXIT_FAIL


def cmd_export(args, cat) -> int:
    name = args.object
    if not name:
        raise UsageError("export needs --object NAME and an output PATH")
    obj = _get(cat, name)
    text = json.dumps(obj.to_dict(), indent=1, sort_keys=True) + "\n"
    try:
        Path(args.path).write_text(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {name} to {args.path}")
    return EXIT_OK


def cmd_import(args, cat) -> int:
    try:
        data = json.loads(Path(args.path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        obj = load_object(data)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    kind = type(obj).__name__
    if args.check:
        if isinstance(obj, TypeDStructure):
            rep = validate_type_d(obj)
        elif isinstance(obj, TypeAModule):
            rep = validate_type_a(obj)
        else:
            rep = validate_complex(obj)
        print(json.dumps({"kind": kind, "violations": rep.violations}, indent=2))
        return EXIT_OK if rep.ok else EXIT_FAIL
    n = len(obj.generators)
    print(json.dumps({"kind": kind, "generators": n}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bfcable",
        description="Bordered Floer computations for cabled exotic disks.",
        epilog="Objects: " + ", ".join(["cfk-J", "cfd-J", "cfd-U", "cfa-longitude", "cfa-cable:p",
                                        "cfa-framed:n", "cfk-cable-J:p"])
        + ". Env BFH_JMAX overrides the operation-family truncation (default 64).",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compute", help="run a named computation")
    c.add_argument("computation", help=", ".join(COMPUTATIONS))
    c.add_argument("objects", nargs="*", help="object names from the registry")
    c.add_argument("--p", type=int, help="cable parameter")
    c.add_argument("--n", type=int, help="surgery framing")
    c.add_argument("--eps1", type=int, choices=(0, 1), default=0)
    c.add_argument("--eps2", type=int, choices=(0, 1), default=0)
    c.add_argument("--json", help="also write the result to this file")

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--all", action="store_true", help="run every check (default)")
    v.add_argument("--check", action="append", help="run only this check id (repeatable)")
    v.add_argument("--json", help="write a JSON report of CheckResults")

    e = sub.add_parser("export", help="write a built-in object as JSON")
    e.add_argument("--object", help="registry name, e.g. cfd-J or cfa-cable:3")
    e.add_argument("targets", nargs="+", metavar="[NAME] PATH", help="output file, optionally preceded by the name")

    i = sub.add_parser("import", help="load and schema-check a JSON object")
    i.add_argument("path")
    i.add_argument("--check", action="store_true", help="also run the module validator")
    return ap


def main(argv=None, catalog=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.cmd == "export":
        *names, args.path = args.targets
        if len(names) > 1 or (names and args.object):
            print("usage error: export takes one object name", file=sys.stderr)
            return EXIT_USAGE
        args.object = args.object or (names[0] if names else None)
    cat = catalog or po.DEFAULT_CATALOG
    handler = {"compute": cmd_compute, "verify": cmd_verify,
               "export": cmd_export, "import": cmd_import}[args.cmd]
    try:
        return handler(args, cat)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
