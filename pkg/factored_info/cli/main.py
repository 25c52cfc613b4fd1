"""factored-info command line.

Usage:
    factored-info measure p.json --measure SFMI --pairing pairing.json
    factored-info atlas --N 2 --n 3 --out atlas.json
    factored-info verify --all
    factored-info optimize --measure FMI --N 2 --n 3 --restarts 20
    factored-info codes --N 3 --n 2 --partitions
    factored-info polytope margins.json --format table

Exit codes: 0 success, 1 verification failure or unexpected error, 2 input error, 3 cap exceeded.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

from ..errors import CapExceededError, InvariantViolation
from ..search.optimizer import SearchConfig
from ..settings import set_global_settings
from .commands import (
    EXIT_CAP_EXCEEDED,
    EXIT_INPUT_ERROR,
    EXIT_VERIFICATION_FAILED,
    MEASURE_NAMES,
    CommandResult,
    cmd_atlas,
    cmd_codes,
    cmd_measure,
    cmd_optimize,
    cmd_polytope,
)
from .formatting import render_table
from .io import describe_validation_error, load_document
from .verify import cmd_verify

logger = logging.getLogger(__name__)


def _int_list(text: str) -> List[int]:
    """ "2,1" -> [2, 1] """
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _code_list(text: str) -> List[List[str]]:
    """ "00,11;01,10" -> [["00", "11"], ["01", "10"]] """
    return [code.split(",") for code in text.split(";")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="json",
                        help="Output format (default: json)")
    common.add_argument("--base", choices=["e", "2"], default="e",
                        help="Logarithm base of reported values (default: e)")

    parser = argparse.ArgumentParser(prog="factored-info",
                                     description="Multi-information and factorized MI measures")
    parser.add_argument("--log-level", default=None, help="Logging level (default: from settings)")
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", parents=[common], help="Evaluate a measure on a distribution")
    measure.add_argument("distribution", help="Distribution JSON file")
    measure.add_argument("--measure", choices=sorted(MEASURE_NAMES), required=True)
    measure.add_argument("--family", help="Family JSON file for I_lambda")
    measure.add_argument("--pairing", help="Pairing JSON file for SFMI")
    measure.add_argument("--split", help="Block split JSON file for MI")

    atlas = sub.add_parser("atlas", parents=[common], help="Enumerate SFMI polytopes")
    atlas.add_argument("--N", type=int, required=True, help="Alphabet size")
    atlas.add_argument("--n", type=int, required=True, help="Number of (X_i, Y_i) pairs")
    atlas.add_argument("--pairing", type=_int_list, help="1-based match, e.g. 2,1")
    atlas.add_argument("--margins", type=_code_list, help="One code per pair, e.g. 00,11;01,10")
    atlas.add_argument("--out", help="Write the atlas JSON to this file")

    verify = sub.add_parser("verify", parents=[common], help="Run built-in scenarios")
    group = verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", help="Scenario name")
    group.add_argument("--all", action="store_true", help="Run every scenario")

    optimize = sub.add_parser("optimize", parents=[common], help="Maximize a measure numerically")
    optimize.add_argument("--measure", choices=sorted(MEASURE_NAMES), required=True)
    optimize.add_argument("--N", type=int, required=True, help="Alphabet size")
    optimize.add_argument("--n", type=int, required=True, help="Number of variables")
    optimize.add_argument("--config", help="SearchConfig JSON file")
    optimize.add_argument("--family", help="Family JSON file for I_lambda")
    optimize.add_argument("--pairing", type=_int_list, help="1-based match for SFMI")
    optimize.add_argument("--split", help="Block split JSON file for MI")
    optimize.add_argument("--restarts", type=int)
    optimize.add_argument("--max-iterations", type=int)
    optimize.add_argument("--step-size", type=float)
    optimize.add_argument("--seed", type=int)

    codes = sub.add_parser("codes", parents=[common], help="Dump max-distance codes and partitions")
    codes.add_argument("--N", type=int, required=True, help="Alphabet size")
    codes.add_argument("--n", type=int, required=True, help="Code length")
    codes.add_argument("--partitions", action="store_true", help="Include all coset partitions")
    codes.add_argument("--matchings", action="store_true", help="Include the K_{N,N} matchings")

    polytope = sub.add_parser("polytope", parents=[common], help="Solve a margin specification problem")
    polytope.add_argument("margins", help="Margin specification JSON file")
    return parser


def _search_config(args: argparse.Namespace) -> SearchConfig:
    config = load_document(args.config, SearchConfig) if args.config else SearchConfig()
    overrides = {
        "restarts": args.restarts,
        "max_iterations": args.max_iterations,
        "step_size": args.step_size,
        "seed": args.seed,
    }
    updates = {k: v for k, v in overrides.items() if v is not None}
    # Re-validate so overrides obey the same bounds as documents
    return SearchConfig.model_validate({**config.model_dump(), **updates})


def dispatch(args: argparse.Namespace) -> CommandResult:
    if args.command == "measure":
        return cmd_measure(args.distribution, args.measure, args.family, args.pairing, args.split, args.base)
    if args.command == "atlas":
        return cmd_atlas(args.N, args.n, args.pairing, args.margins, args.out, args.base)
    if args.command == "verify":
        return cmd_verify(args.scenario, run_all=args.all)
    if args.command == "optimize":
        return cmd_optimize(args.measure, args.N, args.n, config=_search_config(args),
                            family_path=args.family, pairing=args.pairing, split_path=args.split,
                            base=args.base)
    if args.command == "codes":
        return cmd_codes(args.N, args.n, partitions=args.partitions, matchings=args.matchings)
    return cmd_polytope(args.margins)


def render(result: CommandResult, output_format: str) -> str:
    if output_format == "table":
        return render_table(result.rows, result.title)
    return json.dumps(result.payload, indent=2)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = set_global_settings()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        result = dispatch(args)
    except CapExceededError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except ValidationError as e:
        message = describe_validation_error(e)
        logger.error(f"Invalid input: {message}")
        print(f"error: invalid input: {message}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except InvariantViolation as e:
        logger.error(f"Consistency check failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except (ValueError, OSError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception(f"Unexpected failure in '{args.command}'")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    print(render(result, args.format))
    return result.exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
