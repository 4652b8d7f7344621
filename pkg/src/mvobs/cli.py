"""Command-line front end.

Exit status: 0 success / all laws pass, 1 law violation or axiom failure,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serial
from .calculus import obs_join, obs_meet, obs_sum, olson_compare
from .effect import EffectAlgebra
from .errors import AxiomError, DistributivityRequired, NotLatticeError, ObservableError
from .lawcheck import CATALOG, Counterexample, Grid, LawSuiteConfig, SuiteRejected, run_suite, search_counterexample
from .lawcheck.engine import classification
from .observable import compose, negate, parse_map, question

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_algebra(path) -> EffectAlgebra:
    try:
        return serial.read_algebra(path)
    except AxiomError as exc:
        raise UsageError(f"{path}: not an effect algebra: {exc}") from exc


def _load_observables(paths):
    xs = [serial.read_observable(p) for p in paths]
    for p, x in zip(paths[1:], xs[1:]):
        if x.algebra != xs[0].algebra:
            raise UsageError(f"{p}: algebra differs from {paths[0]}")
    return xs


# -- alg -------------------------------------------------------------------------


def cmd_alg_check(args) -> int:
    try:
        data = serial.load_json(args.path)
        E = serial.parse_algebra(data, str(args.path), Path(args.path).parent)
    except AxiomError as exc:
        report = {"valid": False, "axiom": exc.axiom, "error": str(exc), "witness": list(exc.witness)}
        if args.format == "json":
            _emit(serial.dumps(report), None)
        else:
            print(f"invalid: {exc}")
            print("witness: " + ", ".join(map(str, exc.witness)))
        return EXIT_VIOLATION
    info = {"valid": True, **classification(E)}
    p = E.properties
    if p.rdp_witness is not None:
        info["rdp_witness"] = [E.show(a) for a in p.rdp_witness]
    if p.distributivity_witness is not None:
        info["distributivity_witness"] = [E.show(a) for a in p.distributivity_witness]
    if args.format == "json":
        _emit(serial.dumps(info), None)
    else:
        width = max(map(len, info))
        for key, value in info.items():
            if isinstance(value, list):
                value = "{" + ", ".join(map(str, value)) + "}"
            print(f"{key.ljust(width)}  {value}")
    return EXIT_OK


# -- obs --------------------------------------------------------------------------


def cmd_obs(args) -> int:
    op = args.op
    if op == "question":
        if not args.algebra or args.element is None:
            raise UsageError("obs question needs --algebra and --element")
        E = _load_algebra(args.algebra)
        value = json.loads(args.element) if args.element.lstrip().startswith(("[", '"')) else args.element
        if isinstance(value, str) and E.to_dict()["kind"] == "product_chains":
            value = int(value)
        elif isinstance(value, list):
            value = tuple(value)
        try:
            a = E.elem(value)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from exc
        _emit(serial.write_observable(question(E, a)), args.out)
        return EXIT_OK

    xs = _load_observables(args.inputs)
    arity = {"sum": 2, "order": 2, "compose": 1, "negate": 1}
    if op in arity and len(xs) != arity[op]:
        raise UsageError(f"obs {op} takes {arity[op]} input(s)")
    if op in ("meet", "join") and not xs:
        raise UsageError(f"obs {op} needs at least one input")

    if op == "order":
        print(olson_compare(*xs).value)
        return EXIT_OK
    if op == "sum":
        result = obs_sum(xs[0], xs[1], force=args.force)
    elif op == "meet":
        result = obs_meet(xs)
    elif op == "join":
        result = obs_join(xs)
    elif op == "negate":
        result = compose(negate, xs[0])
    else:
        if not args.map:
            raise UsageError("obs compose needs --map")
        try:
            f = parse_map(args.map)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        result = compose(f, xs[0])
    _emit(serial.write_observable(result), args.out)
    return EXIT_OK


# -- laws -------------------------------------------------------------------------


def _law_ids(args):
    ids = list(args.law or [])
    if args.suite == "all" or not ids:
        ids = list(CATALOG) if not ids else ids
    unknown = [i for i in ids if i not in CATALOG]
    if unknown:
        raise UsageError(f"unknown law(s) {', '.join(unknown)}; catalog: {', '.join(CATALOG)}")
    return ids


def cmd_laws(args) -> int:
    if not args.algebra:
        raise UsageError("laws needs --algebra")
    E = _load_algebra(args.algebra)
    if args.action == "run":
        config = LawSuiteConfig(
            algebra=E,
            laws=tuple(_law_ids(args)),
            samples=args.samples,
            seed=args.seed,
            grid=Grid(args.grid_denom, args.lo, args.hi),
            max_support=args.max_support,
            exhaustive=args.exhaustive,
            force=args.force,
        )
        report = run_suite(config)
        text = serial.dumps(report.as_dict()) if args.format == "json" else report.table() + "\n"
        _emit(text, args.out)
        return EXIT_OK if report.ok else EXIT_VIOLATION

    ids = _law_ids(args)
    if len(ids) != 1 or not args.law:
        raise UsageError("laws search takes exactly one --law")
    result = search_counterexample(E, ids[0], args.budget, force=args.force, seed=args.seed)
    found = isinstance(result, Counterexample)
    payload = {"found": found, "result": result.as_dict()}
    if args.format == "json":
        text = serial.dumps(payload)
    elif found:
        text = f"{ids[0]}: counterexample: {result.message}" + (f" at t={result.probe}" if result.probe else "")
        text += "\n" + json.dumps(result.inputs, ensure_ascii=False) + "\n"
    else:
        text = (
            f"{ids[0]}: none found in {result.examined} tuples "
            f"({len(result.exhausted)} strata exhausted, {result.random_examined} random)\n"
        )
    _emit(text, args.out)
    return EXIT_VIOLATION if found else EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvobs", description="Observables on finite MV-effect algebras.")
    sub = parser.add_subparsers(dest="group", required=True)

    alg = sub.add_parser("alg", help="algebra files")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    check = alg_sub.add_parser("check", help="validate and classify an algebra")
    check.add_argument("path")
    check.add_argument("--format", choices=["json", "table"], default="table")
    check.set_defaults(func=cmd_alg_check)

    obs = sub.add_parser("obs", help="operations on observables")
    obs.add_argument("op", choices=["question", "sum", "meet", "join", "order", "compose", "negate"])
    obs.add_argument("inputs", nargs="*", help="observable files")
    obs.add_argument("--algebra", help="algebra file (for question)")
    obs.add_argument("--element", help="element: name, integer or JSON list (for question)")
    obs.add_argument("--map", help="negate, one_minus, square, scale:N or affine:P,Q (for compose)")
    obs.add_argument("--force", action="store_true", help="allow sums outside the distributive setting")
    obs.add_argument("--out", help="output file (default: stdout)")
    obs.set_defaults(func=cmd_obs)

    laws = sub.add_parser("laws", help="law suites and counterexample search")
    laws.add_argument("action", choices=["run", "search"])
    laws.add_argument("--algebra")
    laws.add_argument("--suite", choices=["all"])
    laws.add_argument("--law", action="append", help="law id (repeatable)")
    laws.add_argument("--samples", type=int, default=200)
    laws.add_argument("--seed", type=int, default=0)
    laws.add_argument("--budget", type=int, default=10000)
    laws.add_argument("--grid-denom", type=int, default=2)
    laws.add_argument("--lo", default="-2")
    laws.add_argument("--hi", default="2")
    laws.add_argument("--max-support", type=int, default=3)
    laws.add_argument("--exhaustive", action="store_true")
    laws.add_argument("--force", action="store_true")
    laws.add_argument("--format", choices=["json", "table"], default="table")
    laws.add_argument("--out")
    laws.set_defaults(func=cmd_laws)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        UsageError,
        serial.FormatError,
        DistributivityRequired,
        NotLatticeError,
        ObservableError,
        SuiteRejected,
        ValueError,
        KeyError,
    ) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"mvobs: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
