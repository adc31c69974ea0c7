"""Batch command line front end.

Exit codes: 0 success (and solvable for `solve`), 1 unsolvable or a
failed check, 2 invalid input, 3 resource cap.  All output is byte
deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks, jsonio
from .completion import DEFAULT_MAX_CUTS, macneille_completion, to_dot, verify_macneille
from .errors import InvalidInput, OrderCompletionError, ResourceCap
from .generators import GeneratorSpec, describe
from .mapext import PosetMap
from .poset import DEFAULT_MAX_ARITY, CarrierSet, has_maximum, has_minimum
from .solver import build_equation, solve

EXIT_OK = 0
EXIT_UNSOLVABLE = 1
EXIT_INVALID = 2
EXIT_CAP = 3


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON: {exc}") from None
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from None


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_complete(args) -> int:
    poset = jsonio.poset_from_data(_read_json(args.input), max_arity=args.max_arity)
    completion = macneille_completion(poset, max_cuts=args.max_cuts)
    report = verify_macneille(completion)
    payload = {
        "schema_version": jsonio.SCHEMA_VERSION,
        "completion": jsonio.completed_to_data(completion),
        "cut_count": completion.cut_count,
        "has_minimum": has_minimum(poset),
        "has_maximum": has_maximum(poset),
        "empty_set_is_cut": completion.empty_set_is_cut,
        "verification": {
            "complete": report.complete,
            "embedding": report.embedding_ok,
            "density": report.density_ok,
            "exhaustive": report.exhaustive,
            "inf_side_empty": list(report.inf_side_empty),
        },
    }
    _write(jsonio.dumps(payload), args.output)
    if args.emit_dot:
        _write(to_dot(completion), args.emit_dot)
    return EXIT_OK


def _cmd_solve(args) -> int:
    if (args.input is None) == (args.map is None):
        raise InvalidInput("solve needs exactly one of --input or --map")
    if args.input is not None:
        domain, codomain, t = jsonio.equation_from_data(
            _read_json(args.input), max_arity=args.max_arity
        )
    else:
        # a bare map poses the same problem: its source carrier is the
        # domain, any order on it is ignored
        mapping = jsonio.map_from_data(_read_json(args.map), max_arity=args.max_arity)
        domain = CarrierSet(mapping.source.labels)
        codomain = mapping.target
        t = PosetMap(domain, codomain, mapping.assignment)
    instance = build_equation(domain, codomain, t, max_cuts=args.max_cuts)
    target = jsonio.target_from_data(_read_json(args.target), codomain)
    report = solve(instance, target)
    _write(jsonio.dumps(jsonio.solve_report_to_data(report)), args.output)
    return EXIT_OK if report.solvable else EXIT_UNSOLVABLE


def _cmd_check(args) -> int:
    poset = None
    instance = None
    if args.input is not None:
        if args.suite in ("cutcalc", "macneille"):
            poset = jsonio.poset_from_data(
                _read_json(args.input), max_arity=args.max_arity
            )
        elif args.suite in ("theorem41", "theorem42"):
            domain, codomain, t = jsonio.equation_from_data(
                _read_json(args.input), max_arity=args.max_arity
            )
            instance = build_equation(domain, codomain, t, max_cuts=args.max_cuts)
        else:
            raise InvalidInput(f"suite {args.suite!r} does not take --input")
    ok, lines = checks.run_suite(
        args.suite, poset=poset, instance=instance, count=args.count
    )
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_UNSOLVABLE


def _cmd_gen(args) -> int:
    spec = GeneratorSpec(
        family=args.family,
        n=args.n,
        k=args.k,
        m=args.m,
        density=args.density,
        seed=args.seed,
        g=args.g,
        v=args.v,
        stencil=args.stencil,
    )
    data = describe(spec)
    if spec.family == "gridfn":
        domain_labels, (labels, pairs, kind), mapping = data
        payload = {
            "domain": {"elements": list(domain_labels)},
            "codomain": {
                "elements": list(labels),
                "relation": [list(p) for p in pairs],
                "relation_kind": kind,
            },
            "map": mapping,
        }
    else:
        labels, pairs, kind = data
        payload = {
            "elements": list(labels),
            "relation": [list(p) for p in pairs],
            "relation_kind": kind,
        }
    _write(jsonio.dumps(payload), args.output)
    return EXIT_OK


def _cmd_export(args) -> int:
    poset = jsonio.poset_from_data(_read_json(args.input), max_arity=args.max_arity)
    completion = macneille_completion(poset, max_cuts=args.max_cuts)
    _write(to_dot(completion), args.output)
    return EXIT_OK


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-arity", type=int, default=DEFAULT_MAX_ARITY)
    parser.add_argument("--max-cuts", type=int, default=DEFAULT_MAX_CUTS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordercomplete",
        description="Cut completions of finite posets and equation solving over them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complete", help="complete a poset and verify the result")
    p.add_argument("--input", required=True, help="poset JSON file")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--emit-dot", help="also write the Hasse diagram as DOT")
    _add_caps(p)
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("solve", help="solve T#(A) = F for a target cut")
    p.add_argument("--input", help="equation JSON file")
    p.add_argument("--map", help="map JSON file posing the equation instead")
    p.add_argument("--target", required=True, help="target JSON file")
    p.add_argument("--output", help="write the report here instead of stdout")
    _add_caps(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("suite", help="one of " + ", ".join(checks.SUITES))
    p.add_argument("--input", help="poset or equation JSON to check instead of the corpus")
    p.add_argument("--count", type=int, help="batch size for corpus-driven suites")
    _add_caps(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("gen", help="emit a deterministic instance")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--stencil", choices=("identity", "dilate", "erode"))
    p.add_argument("--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("export", help="DOT diagram of a poset's completion")
    p.add_argument("--input", required=True, help="poset JSON file")
    p.add_argument("--output")
    _add_caps(p)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceCap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OrderCompletionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
