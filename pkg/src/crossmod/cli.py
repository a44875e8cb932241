"""Command-line front end: check | build | eval | verify | demo.

Exit codes: 0 pass, 1 axiom/verification failure, 2 malformed input.
All output is deterministic: JSON with sorted keys, canonical scalar strings.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures, verify
from .algebras import (
    check_algebra_morphism,
    check_crossed_algebra,
    group_algebra_C,
    group_algebra_P,
    kp_iso_witness,
    pullback,
    pushforward,
)
from .crossed_modules import check_crossed_module, check_morphism
from .fields import ScalarParseError, field_from_json
from .formal_maps import typecheck, validate_simplicial
from .groups import check_action, check_group_table, check_homomorphism
from .hqft import eval_expression, make_hqft, state_space
from .mutations import MUTATIONS, run_mutation
from .serialize import (
    SerializationError,
    UnknownObject,
    Workspace,
    dumps,
    from_doc,
    load_file,
    to_doc,
)

CHECKABLE = {
    "group": lambda obj: check_group_table(obj.names, obj.table),
    "homomorphism": check_homomorphism,
    "action": check_action,
    "crossed-module": check_crossed_module,
    "morphism": check_morphism,
    "algebra": check_crossed_algebra,
    "algebra-morphism": check_algebra_morphism,
    "expression": typecheck,
    "simplicial": validate_simplicial,
}

_KIND_ALIASES = {
    "group": "group", "homomorphism": "homomorphism", "hom": "homomorphism",
    "action": "action", "crossed-module": "crossed_module",
    "morphism": "morphism", "algebra": "algebra",
    "algebra-morphism": "algebra_morphism", "expression": "expression",
    "simplicial": "simplicial",
}


def _workspace(args) -> Workspace:
    field = field_from_json(getattr(args, "field", "Q") or "Q")
    ws = Workspace(field)
    fixtures_dir = getattr(args, "fixtures_dir", None)
    if fixtures_dir:
        ws.load_dir(fixtures_dir)
    return ws


def _load_target(ws: Workspace, kind_cli: str, target: str):
    kind = _KIND_ALIASES[kind_cli]
    if Path(target).is_file():
        got_kind, name, obj = load_file(target, ws)
        if got_kind != kind:
            raise SerializationError(f"{target} holds a {got_kind}, not a {kind}")
        return obj
    return ws.get(target, kind)


def cmd_check(args) -> int:
    ws = _workspace(args)
    try:
        if args.kind == "group" and Path(args.target).is_file():
            # groups validate at construction; check runs the report-based
            # table checker so axiom failures exit 1 with a counterexample
            import json
            doc = json.loads(Path(args.target).read_text())
            if not isinstance(doc, dict) or "names" not in doc or "table" not in doc:
                raise SerializationError("group document needs names and table")
            report = check_group_table(doc["names"], doc["table"])
        else:
            obj = _load_target(ws, args.kind, args.target)
            report = CHECKABLE[args.kind](obj)
    except SerializationError as exc:
        print(dumps({"error": str(exc)}), end="")
        return 2
    except (OSError, ValueError) as exc:
        print(dumps({"error": str(exc)}), end="")
        return 2
    except UnknownObject as exc:
        print(dumps({"error": str(exc.args[0])}), end="")
        return 2
    print(dumps(report.to_json()), end="")
    return 0 if report.ok else 1


def _write_out(args, doc) -> None:
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")


def cmd_build(args) -> int:
    ws = _workspace(args)
    field = ws.field
    try:
        if args.construction in ("kC", "kP"):
            cm = ws.get(args.args[0], "crossed_module")
            make = group_algebra_C if args.construction == "kC" else group_algebra_P
            alg = make(cm, field)
            rep = check_crossed_algebra(alg)
            if not rep.ok:
                print(dumps(rep.to_json()), end="")
                return 1
            _write_out(args, to_doc("algebra", alg))
        elif args.construction == "pullback":
            fmor = ws.get(args.args[0], "morphism")
            target_alg = _load_target(ws, "algebra", args.args[1])
            alg = pullback(fmor, target_alg)
            rep = check_crossed_algebra(alg)
            if not rep.ok:
                print(dumps(rep.to_json()), end="")
                return 1
            _write_out(args, to_doc("algebra", alg))
        elif args.construction == "pushforward":
            fmor = ws.get(args.args[0], "morphism")
            source_alg = _load_target(ws, "algebra", args.args[1])
            alg = pushforward(fmor, source_alg)
            rep = check_crossed_algebra(alg)
            if not rep.ok:
                print(dumps(rep.to_json()), end="")
                return 1
            _write_out(args, to_doc("algebra", alg))
        elif args.construction == "kp_iso":
            cm = ws.get(args.args[0], "crossed_module")
            witness = kp_iso_witness(cm, field)
            rep = check_algebra_morphism(witness)
            if not rep.ok:
                print(dumps(rep.to_json()), end="")
                return 1
            _write_out(args, to_doc("algebra_morphism", witness))
        else:
            print(dumps({"error": f"unknown construction {args.construction!r}"}), end="")
            return 2
    except (SerializationError, UnknownObject, IndexError) as exc:
        print(dumps({"error": str(exc)}), end="")
        return 2
    except ValueError as exc:
        print(dumps({"error": str(exc)}), end="")
        return 1
    return 0


def cmd_eval(args) -> int:
    ws = _workspace(args)
    try:
        alg = _load_target(ws, "algebra", args.algebra)
        expr = _load_target(ws, "expression", args.expression)
    except (SerializationError, UnknownObject) as exc:
        print(dumps({"error": str(exc)}), end="")
        return 2
    rep = check_crossed_algebra(alg)
    if not rep.ok:
        print(dumps(rep.to_json()), end="")
        return 1
    tau = make_hqft(alg)
    tc = typecheck(expr)
    if not tc.ok:
        print(dumps(tc.to_json()), end="")
        return 1
    result = eval_expression(tau, expr)
    doc = {
        "source_dims": list(state_space(tau, expr.source).dims()),
        "target_dims": list(state_space(tau, expr.target).dims()),
        "matrix": result.matrix.to_json(),
    }
    _write_out(args, doc)
    return 0


def cmd_verify(args) -> int:
    if args.mutate:
        try:
            detection = run_mutation(args.mutate)
        except KeyError as exc:
            print(f"unknown mutation {args.mutate!r}; known: {', '.join(sorted(MUTATIONS))}")
            return 2
        status = "detected" if detection.detected else "NOT DETECTED"
        print(f"mutation {detection.mutation} [{detection.family}]: {status}"
              + (f" at {detection.instance}" if detection.detected else ""))
        return 1 if detection.detected else 0
    try:
        return verify.run_suite(args.suite)
    except KeyError:
        print(f"unknown suite {args.suite!r}; known: {', '.join(verify.SUITES)}")
        return 2


def cmd_demo(args) -> int:
    ws = _workspace(args)
    cm = ws.get("CM-A3S3", "crossed_module")
    print("# crossed module CM-A3S3 (A3 normal in S3, conjugation action)")
    rep = check_crossed_module(cm)
    print(f"axiom check: {'pass' if rep.ok else 'fail'}")
    alg = ws.get("KC.CM-A3S3", "algebra")
    print(f"# its top-group algebra: grade dims {alg.dims}")
    rep = check_crossed_algebra(alg)
    print(f"algebra checker: {'pass' if rep.ok else 'fail'}")
    tau = make_hqft(alg)
    from .formal_maps import Cyl, Disc, expression
    e = expression(cm, [], [[Disc(1)], [Cyl(0, cm.d(1), 1)]],
                   [cm.base.conj(cm.base.inv[1], cm.d(1))])
    out = eval_expression(tau, e)
    print("# evaluating a disc pushed through a cylinder:")
    print(dumps({"matrix": out.matrix.to_json()}), end="")
    witness = kp_iso_witness(cm, ws.field)
    print(f"# section/cocycle isomorphism K[P] ~ q*(K[G]): "
          f"{'pass' if check_algebra_morphism(witness).ok else 'fail'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossmod",
        description="finite crossed modules, crossed algebras, and the formal "
                    "two-dimensional field theory calculus over them")
    parser.add_argument("--field", default="Q",
                        help="scalar field: Q (default) or Fp:<prime>")
    parser.add_argument("--fixtures-dir", default=None,
                        help="directory of JSON object files to preload")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the axiom checker for an object")
    p.add_argument("kind", choices=sorted(CHECKABLE))
    p.add_argument("target", help="object name or JSON file path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", help="run a construction and emit its JSON")
    p.add_argument("construction", choices=["kC", "kP", "pullback", "pushforward", "kp_iso"])
    p.add_argument("args", nargs="+", help="construction inputs (names or files)")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eval", help="evaluate an expression against an algebra")
    p.add_argument("algebra", help="algebra name or file")
    p.add_argument("expression", help="expression file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run acceptance suites on built-in fixtures")
    p.add_argument("suite", nargs="?", default="all",
                   help=f"one of: {', '.join(verify.SUITES)}")
    p.add_argument("--mutate", default=None,
                   help="inject a named mutation; exits 1 when it is detected")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", help="small guided tour on the fixtures")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ScalarParseError:
        return 2
    try:
        return args.func(args)
    except ScalarParseError as exc:
        print(dumps({"error": str(exc)}), end="")
        return 2


if __name__ == "__main__":
    sys.exit(main())
