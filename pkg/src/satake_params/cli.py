"""Command line front end: ``satake-params <command> [options]``.

Every command prints one JSON document.  Exit codes: 0 success, 2 unknown
catalog name, 3 malformed input, 4 invariant violation or failed check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .abelian import ActionError, ClosureError
from .catalog import UnknownEntry, entries, resolve
from .dualdata import DualGroupDatum, kottwitz_group, split_central_rank
from .folding import GaloisAction, fold, fixed_weyl
from .matrixmodels import (
    ReductionFailure,
    NotSemisimple,
    verify_fixed_group_facts,
    verify_nilpotent_lemma,
    verify_torus_round_trip,
    verify_type1_formula,
    verify_type2_formula,
)
from .rootdata import BasedRootDatum, dual, weyl_group
from .satake import (
    GroupSpec,
    SatakeParameter,
    SpecError,
    admissible_pair_check,
    gl_inner_form_parameter,
    member_S_G,
    orbit,
    pi_star,
    transfer,
)
from .values import FormalValueError, TorusCharacter, parse_tuple, parse_value

EXIT_UNKNOWN = 2
EXIT_MALFORMED = 3
EXIT_INVARIANT = 4


class InputError(ValueError):
    """Input that cannot be parsed at all (as opposed to parsed but inconsistent)."""


class CheckFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__("check failed")
        self.payload = payload


# ---------------------------------------------------------------------------
# input helpers


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _spec_from_json(obj) -> GroupSpec:
    if not isinstance(obj, dict) or "datum" not in obj:
        raise InputError("a group spec needs a 'datum' entry")
    try:
        return GroupSpec.from_json(obj)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        if isinstance(exc, (ActionError, SpecError)) and "malformed" not in str(exc):
            raise
        raise InputError(f"malformed group spec: {exc}") from exc


def load_spec(args) -> GroupSpec:
    if args.spec:
        return _spec_from_json(_load_json(args.spec))
    if not args.catalog:
        raise InputError("give --catalog NAME or --spec FILE.json")
    entry = resolve(args.catalog)
    if entry.spec is None:
        raise InputError(f"{entry.name} is a folding example, not a group")
    return entry.spec


def load_fold_input(args) -> tuple[str, BasedRootDatum, GaloisAction]:
    if args.spec:
        obj = _load_json(args.spec)
        spec = _spec_from_json(obj)
        return spec.name, spec.datum, spec.dual.action
    if not args.catalog:
        raise InputError("give --catalog NAME or --spec FILE.json")
    entry = resolve(args.catalog)
    d, a = entry.fold_input()
    return entry.name, d, a


def _values(text: str):
    try:
        return parse_tuple(text)
    except FormalValueError as exc:
        raise InputError(str(exc)) from exc


def parse_parameter(spec: GroupSpec, text: str) -> SatakeParameter:
    """Values on the generators of the parameter lattice; torsion relations are checked."""
    vals = _values(text)
    return SatakeParameter.from_values(spec, vals)


def parse_support(spec: GroupSpec, text: Optional[str]) -> TorusCharacter:
    if text is None:
        return TorusCharacter.trivial(spec.kottwitz)
    return TorusCharacter(spec.kottwitz, tuple(_values(text)))


def _levi(spec: GroupSpec, text: Optional[str]) -> tuple[int, ...]:
    if text is None:
        return spec.minimal_levi
    try:
        return tuple(int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"malformed levi {text!r}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"malformed integer list {text!r}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_fold(args) -> dict:
    name, d, action = load_fold_input(args)
    folded = fold(d, action)
    folded.check_root_system()
    w = weyl_group(d)
    fixed = fixed_weyl(w, action.inertia)
    out = {"name": name, **folded.to_json(),
           "positive_roots": len(folded.positive),
           "fixed_weyl_order": fixed.order,
           "folded_weyl_order": len(folded.weyl_permutations())}
    return out


def cmd_dual(args) -> dict:
    spec = load_spec(args)
    return {"name": spec.name, "group_datum": dual(spec.datum).to_json(),
            "dual_datum": spec.datum.to_json(), "action": spec.dual.action.to_json()}


def cmd_kottwitz(args) -> dict:
    spec = load_spec(args)
    levi = _levi(spec, args.levi)
    k = kottwitz_group(spec.dual, levi)
    return {"name": spec.name, "levi": list(levi), **k.to_json(),
            "split_central_rank": split_central_rank(spec.dual)}


def cmd_transfer(args) -> dict:
    spec = load_spec(args)
    chi = parse_support(spec, args.chi)
    s = transfer(spec, chi)
    return {"name": spec.name, "support": [str(v) for v in chi.values], **s.to_json()}


def cmd_satake(args) -> dict:
    spec = load_spec(args)
    chi = parse_support(spec, args.chi)
    s = transfer(spec, chi)
    seen = sorted({c.key(): c for c in orbit(spec, s.char)}.values(), key=TorusCharacter.key)
    return {"name": spec.name, "support": [str(v) for v in chi.values], **s.to_json(),
            "orbit": [[str(v) for v in c.values] for c in seen]}


def cmd_member(args) -> dict:
    spec = load_spec(args)
    if args.param is None:
        raise InputError("member needs --param")
    s = parse_parameter(spec, args.param)
    res = member_S_G(spec, s)
    admissible = admissible_pair_check(spec, s)
    if admissible != res.member:
        raise CheckFailed({"error": "membership and admissible pair check disagree",
                           "member": res.member, "admissible": admissible})
    return {"name": spec.name, "parameter": [str(v) for v in s.char.values],
            **res.to_json(), "admissible_pair": admissible}


def cmd_pistar(args) -> dict:
    spec = load_spec(args)
    if args.param is None:
        raise InputError("pistar needs --param")
    if args.target:
        star = resolve(args.target).spec
    else:
        star = GroupSpec(spec.name + "*", DualGroupDatum(spec.datum, spec.dual.action), (),
                         "quasi-split inner form")
    s = parse_parameter(spec, args.param)
    t = pi_star(spec, star, s)
    return {"name": spec.name, "target": star.name, **t.to_json()}


def cmd_glinner(args) -> dict:
    parts = _ints(args.m)
    if args.eta:
        try:
            twists = [parse_value(x) for x in args.eta.split(",")]
        except FormalValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        twists = [parse_value(f"η{i + 1}") for i in range(len(parts))]
    s = gl_inner_form_parameter(args.n, args.d, parts, twists)
    out = {"n": args.n, "d": args.d, "m": parts, "twists": [str(t) for t in twists], **s.to_json()}
    if args.check:
        chi = TorusCharacter(s.spec.kottwitz, tuple(twists))
        out["matches_transfer"] = transfer(s.spec, chi) == s
        if not out["matches_transfer"]:
            raise CheckFailed(out)
    return out


def cmd_verify(args) -> dict:
    n = args.n
    lam = Fraction(args.lam)
    outer = not args.inner
    if args.what == "steinberg":
        if n % 2:
            rep = verify_type2_formula(n)
            kind = "type2"
        else:
            rep = verify_type1_formula(n)
            kind = "type1"
        out = {"check": "steinberg", "formula": kind, "n": n, **rep.to_json()}
    elif args.what == "nilpotent":
        rep = verify_nilpotent_lemma(n, lam, args.trials, args.seed, outer)
        out = {"check": "nilpotent", "n": n, "lambda": str(lam), "trials": args.trials,
               "successes": rep.successes, **rep.to_json()}
    elif args.what == "torus":
        rep = verify_torus_round_trip(n, args.trials, args.seed, outer)
        out = {"check": "torus", "n": n, "trials": args.trials, "successes": rep.successes,
               **rep.to_json()}
    else:
        rep = verify_fixed_group_facts(n, outer, args.group)
        out = {"check": "fixed", "n": n, "group": args.group, **rep.to_json()}
    if not args.verbose:
        out["checks"] = len(out["checks"])
    if not rep.ok:
        raise CheckFailed(out)
    return out


def cmd_catalog(args) -> dict:
    rows = []
    for e in entries():
        row = {"name": e.name, "kind": e.kind, "description": e.description}
        if e.spec is not None:
            row["quasi_split"] = e.spec.is_quasisplit
        rows.append(row)
    return {"entries": rows}


COMMANDS = {
    "fold": cmd_fold, "dual": cmd_dual, "kottwitz": cmd_kottwitz, "transfer": cmd_transfer,
    "satake": cmd_satake, "member": cmd_member, "pistar": cmd_pistar, "glinner": cmd_glinner,
    "verify": cmd_verify, "catalog": cmd_catalog,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="satake-params", description=__doc__.splitlines()[0])
    p.add_argument("--pretty", action="store_true", help="indented output")
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp):
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--catalog", metavar="NAME")
        src.add_argument("--spec", metavar="FILE.json")
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)

    for name in ("fold", "dual"):
        group_args(sub.add_parser(name))
    sp = sub.add_parser("kottwitz")
    group_args(sp)
    sp.add_argument("--levi", help="simple root positions, e.g. 0,2 (default: minimal levi)")
    for name in ("transfer", "satake"):
        sp = sub.add_parser(name)
        group_args(sp)
        sp.add_argument("--chi", help="values on the Kottwitz group generators (default trivial)")
    sp = sub.add_parser("member")
    group_args(sp)
    sp.add_argument("--param", help="values on the parameter lattice generators, e.g. '(q^2,1)'")
    sp = sub.add_parser("pistar")
    group_args(sp)
    sp.add_argument("--param")
    sp.add_argument("--target", help="catalog name of the quasi-split inner form")
    sp = sub.add_parser("glinner")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--m", required=True, help="block multiplicities, e.g. 1,1")
    sp.add_argument("--eta", help="comma separated twists (default symbolic η1, η2, ...)")
    sp.add_argument("--check", action="store_true", help="compare with the transfer")
    sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    sp = sub.add_parser("verify")
    sp.add_argument("what", choices=["steinberg", "nilpotent", "torus", "fixed"])
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--lambda", dest="lam", default="4")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--group", choices=["SL", "GL"], default="SL")
    sp.add_argument("--inner", action="store_true", help="use the trivial automorphism")
    sp.add_argument("--verbose", action="store_true", help="list every individual check")
    sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    sub.add_parser("catalog").add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    return p


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, dict]:
    """Dispatch a command; returns ``(exit status, JSON payload)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        job = {"command": argv[0] if argv else None, "argv": argv, "status": EXIT_MALFORMED,
               "result": {"error": "malformed input", "detail": str(exc)}}
        return EXIT_MALFORMED, job
    try:
        payload = COMMANDS[args.command](args)
        status = 0
    except UnknownEntry as exc:
        payload, status = {"error": "unknown catalog name", "detail": str(exc.args[0])}, EXIT_UNKNOWN
    except InputError as exc:
        payload, status = {"error": "malformed input", "detail": str(exc)}, EXIT_MALFORMED
    except CheckFailed as exc:
        payload, status = exc.payload, EXIT_INVARIANT
    except (ActionError, ClosureError, SpecError, FormalValueError,
            NotSemisimple, ReductionFailure, ValueError, AssertionError) as exc:
        payload, status = {"error": "invariant violation", "detail": str(exc)}, EXIT_INVARIANT
    return status, {"command": args.command, "argv": argv,
                    "status": status, "result": payload}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    status, job = run(args)
    pretty = "--pretty" in args
    print(json.dumps(job, indent=2 if pretty else None, ensure_ascii=False))
    return status


if __name__ == "__main__":
    sys.exit(main())
