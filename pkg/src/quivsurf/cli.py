"""Command-line interface with JSON input and output.

Exit codes: 0 success (and, for verifying commands, all checks passed);
1 a verification gave a negative verdict; 2 malformed or invalid input.
Reports are printed to stdout with sorted keys, so identical inputs give
byte-identical output; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .linalg import rank_rational, signature_symmetric
from .quivers import chi_minus, chi_plus, gram_from_json, obstruction_report, quiver_from_json
from .toric import FanError, PRESETS, divisor_from_json, fan_from_json, preset
from .exceptional import (
    abc_of,
    collection_from_json,
    search_abc,
    solve_abc,
    verify_collection,
)
from .reproduce import run_all

SCHEMA = "quivsurf.report/1"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}")


def _load_fan(arg: str):
    """A fan file, '-' for stdin, or a named preset."""
    if arg != "-" and not Path(arg).exists() and arg in PRESETS:
        return preset(arg)
    data = _load_json(arg)
    if not isinstance(data, dict) or "rays" not in data:
        raise InputError("fan JSON must be an object with a 'rays' key")
    return fan_from_json(data)


def _report(command: str, payload: dict, ok: bool = True) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "result": payload,
        "pass": ok,
    }


def _emit(report: dict) -> None:
    print(json.dumps(report, sort_keys=True, indent=2))


def cmd_obstruct(args) -> int:
    data = _load_json(args.input)
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if "gram" in data:
        source = gram_from_json(data)
    elif "vertices" in data:
        source = quiver_from_json(data)
    else:
        raise InputError("input must contain either 'vertices'/'arrows' or 'gram'")
    report = obstruction_report(source)
    _emit(_report("obstruct", report.to_json(), ok=report.passes))
    return EXIT_OK if report.passes else EXIT_VERIFY_FAILED


def cmd_toric(args) -> int:
    surface = _load_fan(args.fan)
    if args.subcommand == "coh":
        if args.divisor is None:
            raise InputError("toric coh needs a divisor (-d)")
        try:
            raw_divisor = json.loads(args.divisor)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid divisor JSON: {exc}")
        divisor = divisor_from_json(surface, raw_divisor)
        coh = surface.cohomology(divisor)
        payload = {
            "rays": [list(r) for r in surface.rays],
            "divisor": list(divisor),
            "h": list(coh),
            "chi": surface.rr_chi(divisor),
        }
        _emit(_report("toric coh", payload))
        return EXIT_OK
    gram = surface.knum_gram()
    sig = signature_symmetric(chi_plus(gram))
    payload = {
        "rays": [list(r) for r in surface.rays],
        "picard_rank": surface.picard_rank,
        "basis": ["point"]
        + [f"curve_ray_{i}" for i in surface.pic_basis_indices()]
        + ["structure_sheaf"],
        "gram": gram.int_rows(),
        "rank_chi_minus": rank_rational(chi_minus(gram)),
        "signature_chi_plus": list(sig),
    }
    _emit(_report("toric knum", payload))
    return EXIT_OK


def cmd_verify(args) -> int:
    data = _load_json(args.input)
    collection = collection_from_json(data)
    result = verify_collection(collection, strong=args.strong)
    payload = {
        "objects": len(collection),
        "strong": args.strong,
        "ok": result.ok,
        "hom": [[list(t) for t in row] for row in result.hom],
    }
    if result.failure is not None:
        payload["failure"] = {
            "i": result.failure.i,
            "j": result.failure.j,
            "ext": list(result.failure.ext),
            "reason": result.failure.reason,
            "detail": result.failure.describe(),
        }
    if result.ok and args.strong and len(collection) == 3:
        try:
            payload["abc"] = list(abc_of(collection))
        except ValueError as exc:
            payload["abc_error"] = str(exc)
    _emit(_report("verify", payload, ok=result.ok))
    return EXIT_OK if result.ok else EXIT_VERIFY_FAILED


def cmd_search(args) -> int:
    surface = _load_fan(args.fan)
    outcome = search_abc(surface, args.a, args.b, args.c, bound=args.bound)
    payload = {
        "triple": list(outcome.triple),
        "bound": args.bound,
        "pairs": [[list(d), list(e)] for d, e in outcome.pairs],
        "count": len(outcome.pairs),
    }
    if outcome.diagnostic:
        payload["diagnostic"] = outcome.diagnostic
    _emit(_report("search", payload))
    return EXIT_OK


def cmd_solve_abc(args) -> int:
    payload = {
        "max": args.max,
        "solutions": [list(t) for t in solve_abc(args.max)],
    }
    _emit(_report("solve-abc", payload))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    report = run_all(m_max=args.m_max, seed=args.seed)
    for name, ok in report["summary"].items():
        print(f"{name}: {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    _emit(_report("reproduce", report, ok=report["pass"]))
    return EXIT_OK if report["pass"] else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quivsurf",
        description=(
            "Obstructions for embedding quiver derived categories into "
            "derived categories of smooth projective surfaces, and strong "
            "exceptional collections of line bundles on toric surfaces."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("obstruct", help="obstruction report for a quiver or Gram matrix")
    p.add_argument("input", help="JSON file ('-' for stdin) with 'vertices'/'arrows' or 'gram'")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("toric", help="toric surface computations")
    p.add_argument("subcommand", choices=("coh", "knum"))
    p.add_argument("fan", help="fan JSON file, '-', or a preset name (e.g. dP6, P2)")
    p.add_argument(
        "-d",
        "--divisor",
        help="divisor as JSON: a coefficient list or {\"pic\": [...]}",
    )
    p.set_defaults(func=cmd_toric)

    p = sub.add_parser("verify", help="verify an ordered collection of sheaves")
    p.add_argument("input", help="collection JSON file or '-'")
    p.add_argument("--strong", action="store_true", help="require strongness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="search divisor pairs realising a 3-vertex quiver")
    p.add_argument("fan", help="fan JSON file, '-', or a preset name")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.add_argument("--bound", type=int, default=3, help="Picard coordinate bound")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("solve-abc", help="solutions of a + b = ab + c")
    p.add_argument("--max", type=int, default=10)
    p.set_defaults(func=cmd_solve_abc)

    p = sub.add_parser("reproduce", help="run the full verification battery")
    p.add_argument("--m-max", type=int, default=5, help="divisor-table parameter range")
    p.add_argument("--seed", type=int, default=7, help="seed for random surface checks")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FanError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
