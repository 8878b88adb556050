"""Command-line front end.

Spaces are referenced either inline (catalog:polygon:5) or as a path to a
JSON space document.  All numeric output uses %.9g so identical inputs
give byte-identical results.

Exit codes: 0 success, 1 input error, 2 capacity error, 3 numerical or
internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import documents, game, qubit, storability
from .degradability import is_degradable_set, is_nondegradable_measurement
from .discrimination import decoding_power, encoding_power
from .errors import CapacityError, GptGameError, InputError, NumericalError
from .model import EPS_CMP, EPS_FEAS, StateSpace
from .rays import MAX_AMBIENT_DIM
from .spaces import parse_catalog
from .storability import MAX_SUBSETS


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{message}\n{self.format_usage()}")


_GLOBAL_DEFAULTS = {
    "tolerance_feas": EPS_FEAS,
    "tolerance_cmp": EPS_CMP,
    "max_dim": MAX_AMBIENT_DIM,
    "max_subsets": MAX_SUBSETS,
    "seed": 0,
}


def _build_parser() -> _Parser:
    # the shared flags parse from either side of the subcommand; SUPPRESS
    # keeps the subparser from stomping a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance-feas", type=float, default=argparse.SUPPRESS,
                        help=f"feasibility tolerance (default {EPS_FEAS:g})")
    common.add_argument("--tolerance-cmp", type=float, default=argparse.SUPPRESS,
                        help=f"value-comparison tolerance (default {EPS_CMP:g})")
    common.add_argument("--max-dim", type=int, default=argparse.SUPPRESS,
                        help="ambient-dimension cap for ray enumeration")
    common.add_argument("--max-subsets", type=int, default=argparse.SUPPRESS,
                        help="cap on vertex subsets per sweep level")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized commands")

    parser = _Parser(prog="gptgame", description=__doc__, parents=[common],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("catalog", help="emit a space document", parents=[common])
    p.add_argument("space")

    p = sub.add_parser("is", help="storability profile, or one limited value",
                       parents=[common])
    p.add_argument("space")
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("discriminate", help="encoding power of an ensemble",
                       parents=[common])
    p.add_argument("space")
    p.add_argument("ensemble")

    p = sub.add_parser("degradable", help="degradability verdict for a state set",
                       parents=[common])
    p.add_argument("space")
    p.add_argument("ensemble")

    p = sub.add_parser("degradable-measurement",
                       help="degradability verdict for a measurement",
                       parents=[common])
    p.add_argument("space")
    p.add_argument("measurement")

    p = sub.add_parser("game", help="optimal strategy for one penalty",
                       parents=[common])
    p.add_argument("space")
    p.add_argument("--w", type=float, required=True)

    p = sub.add_parser("sweep", help="reward curves over a penalty interval",
                       parents=[common])
    p.add_argument("space")
    p.add_argument("--w-min", type=float, required=True)
    p.add_argument("--w-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--svg", default=None, help="also write an SVG chart here")
    p.add_argument("--out", default=None, help="write the CSV here instead of stdout")
    p.add_argument("--long", action="store_true",
                   help="emit the long-form w,n,E_w_n table instead of the summary")

    p = sub.add_parser("qubit-fixture", help="run a closed-form qubit check",
                       parents=[common])
    p.add_argument("name", choices=sorted(qubit.FIXTURES))
    return parser


def _load_space(ref: str, args) -> StateSpace:
    if ref.startswith("catalog:"):
        space = parse_catalog(ref[len("catalog:"):])
        if space.ambient_dim > args.max_dim:
            raise CapacityError(
                f"space {space.name} has ambient dimension {space.ambient_dim} "
                f"above the cap {args.max_dim}"
            )
        return space
    try:
        with open(ref, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read space file {ref!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {ref!r}: {exc}") from exc
    return documents.parse_space_document(doc, eps_feas=args.tolerance_feas)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path!r}: {exc}") from exc


def _emit(doc, out=None) -> None:
    (out or sys.stdout).write(documents.to_json(doc) + "\n")


def _profile_kwargs(args) -> dict:
    return {
        "eps_feas": args.tolerance_feas,
        "eps_cmp": args.tolerance_cmp,
        "max_dim": args.max_dim,
        "max_subsets": args.max_subsets,
    }


def _cmd_catalog(args) -> int:
    space = _load_space(args.space, args)
    _emit(documents.space_document(space))
    return 0


def _cmd_is(args) -> int:
    space = _load_space(args.space, args)
    if args.n is not None:
        res = storability.storability_limited(space, args.n, **_profile_kwargs(args))
        _emit({"space": space.name, "n": res.n, "is_n": res.value})
        return 0
    profile = storability.characteristic_numbers(space, **_profile_kwargs(args))
    _emit(documents.profile_document(profile))
    return 0


def _cmd_discriminate(args) -> int:
    space = _load_space(args.space, args)
    ensemble = documents.parse_ensemble_document(
        _load_json(args.ensemble), space, eps_feas=args.tolerance_feas
    )
    res = encoding_power(space, ensemble, eps_feas=args.tolerance_feas)
    _emit({
        "space": space.name,
        "encoding_power": res.value,
        "per_state_success": [float(x) for x in res.per_state_success],
        "measurement": documents.measurement_document(res.optimal_measurement, space),
    })
    return 0


def _cmd_degradable(args) -> int:
    space = _load_space(args.space, args)
    ensemble = documents.parse_ensemble_document(
        _load_json(args.ensemble), space, eps_feas=args.tolerance_feas
    )
    verdict = is_degradable_set(space, ensemble, eps_cmp=args.tolerance_cmp,
                                eps_feas=args.tolerance_feas)
    _emit({
        "space": space.name,
        "degradable": verdict.degradable,
        "witness": list(verdict.witness) if verdict.witness is not None else None,
        "precheck_reason": verdict.precheck_reason,
        "margin": verdict.margin,
    })
    return 0


def _cmd_degradable_measurement(args) -> int:
    space = _load_space(args.space, args)
    meas = documents.parse_measurement_document(
        _load_json(args.measurement), space, eps_feas=args.tolerance_feas
    )
    res = is_nondegradable_measurement(space, meas, eps_cmp=args.tolerance_cmp)
    lam = decoding_power(space, meas)
    _emit({
        "space": space.name,
        "nondegradable": res.nondegradable,
        "overlapping_pair": list(res.overlapping_pair) if res.overlapping_pair else None,
        "maximizer_faces": [list(f) for f in res.maximizer_faces],
        "decoding_power": lam.value,
    })
    return 0


def _cmd_game(args) -> int:
    space = _load_space(args.space, args)
    report = game.optimal_strategy(space, args.w, **_profile_kwargs(args))
    _emit({
        "space": space.name,
        "w": report.w,
        "optimal_n": report.optimal_n,
        "expected_reward": report.expected_reward,
        "strategy_class": report.strategy_class,
        "curve": {str(n): report.curve[n] for n in sorted(report.curve)},
        "witness_ensemble": documents.ensemble_document(report.witness_ensemble),
        "witness_measurement": documents.measurement_document(
            report.witness_measurement, space),
    })
    return 0


def _cmd_sweep(args) -> int:
    space = _load_space(args.space, args)
    table = game.sweep(space, args.w_min, args.w_max, args.steps,
                       **_profile_kwargs(args))
    csv_text = game.sweep_long_csv(table) if args.long else game.sweep_summary_csv(table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(game.sweep_svg(table))
    return 0


def _cmd_qubit_fixture(args) -> int:
    if args.name == "two-bases":
        report = qubit.verify_two_bases_degradable()
        _emit({
            "fixture": args.name,
            "pair_success": report.pair_success,
            "encoding_power": report.encoding_power,
            "degradable": report.degradable,
            "witness_pair": list(report.witness_pair),
            "maximally_decodable": report.maximally_decodable,
        })
        return 0
    blochs = qubit.FIXTURES[args.name]()
    report = qubit.verify_symmetric_decodable(blochs)
    _emit({
        "fixture": args.name,
        "balanced": report.balanced,
        "bloch_sum_norm": report.bloch_sum_norm,
        "r": report.r,
        "povm_residual": report.povm_residual,
        "decodable_value": report.decodable_value,
    })
    return 0


_COMMANDS = {
    "catalog": _cmd_catalog,
    "is": _cmd_is,
    "discriminate": _cmd_discriminate,
    "degradable": _cmd_degradable,
    "degradable-measurement": _cmd_degradable_measurement,
    "game": _cmd_game,
    "sweep": _cmd_sweep,
    "qubit-fixture": _cmd_qubit_fixture,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        for name, default in _GLOBAL_DEFAULTS.items():
            if not hasattr(args, name):
                setattr(args, name, default)
        if args.command is None:
            raise InputError(f"missing command\n{parser.format_usage()}")
        if args.tolerance_feas <= 0 or args.tolerance_cmp <= 0:
            raise InputError("tolerances must be positive")
        if args.max_dim <= 0 or args.max_subsets <= 0:
            raise InputError("caps must be positive")
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, GptGameError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # internal failure still gets a defined exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
