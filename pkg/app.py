import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import jsonschema
from pydantic import ValidationError

from src.amplify.amplify_spec import AmplifyMode
from src.cli.commands import COMMANDS
from src.cli.result_document import write_document
from src.cli.run_config import RunConfig
from src.environment_loader import EnvironmentLoader
from src.errors import EXIT_OK, EXIT_USAGE, QRootError
from src.gradient.gradient_source import GradientSourceKind
from src.marking.marker import MarkingMode


def setup_logging(level: Optional[str] = None, log_file: Optional[Path] = None) -> None:
    """Configure logging for the application. Log lines go to stderr; stdout carries only the document."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = log_file or EnvironmentLoader.log_file()
    if log_file is not None:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=(level or EnvironmentLoader.log_level()).upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("system_path", type=Path, help="polynomial system file, one equation per line")
    parser.add_argument("--bits", type=int, help="qubits per variable register (N)")
    parser.add_argument("--int-bits", type=int, help="integer bits per variable register (m)")
    threshold = parser.add_mutually_exclusive_group()
    threshold.add_argument("--lambda", dest="lambda_", type=int, help="leading result bits required to be zero")
    threshold.add_argument("--threshold-log2", type=int, help="check passes iff |f_i| < 2^threshold")
    parser.add_argument("--result-frac-bits", type=int, help="fractional bits of the result register")
    parser.add_argument("--accuracy-bits", type=int, help="refined solution grid 2^-l")
    parser.add_argument("--max-iters", type=int, help="descent iterations (solve, estimate) or Newton iterations")
    parser.add_argument("--threads", type=int, help="worker threads; 1 gives bit-identical reductions")
    parser.add_argument("--precision", type=int, help="decimal digits in the result document")
    parser.add_argument("--out", dest="output_path", type=Path, help="write the document here instead of stdout")
    parser.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qroot",
        description="Simulated quantum search and gradient refinement for square polynomial systems.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", help="mark, amplify, sample and refine candidate roots")
    _add_common_arguments(solve)
    solve.add_argument("--amplify", choices=[m.value for m in AmplifyMode], help="amplification schedule")
    solve.add_argument("--marking", choices=[m.value for m in MarkingMode], help="marking simulation")
    solve.add_argument("--shots", type=int, help="accepted samples to draw")
    solve.add_argument("--max-trials", type=int, help="trials per shot (repeat) or resampling rounds")
    solve.add_argument("--seed", type=int, help="root seed for every random draw")
    solve.add_argument("--gradient", choices=[k.value for k in GradientSourceKind],
                       help="analytic or simulated gradient")
    solve.add_argument("--grid-bits", type=int, help="qubits per variable of the gradient grid (g)")
    solve.add_argument("--window", help="gradient grid width L, e.g. 1/8")
    solve.add_argument("--alpha", help="fixed descent step; default is 1/||Hessian||")

    marked = subparsers.add_parser("marked-set", help="enumerate the marked grid points")
    _add_common_arguments(marked)

    estimate = subparsers.add_parser("estimate", help="operation and qubit estimates")
    _add_common_arguments(estimate)

    newton = subparsers.add_parser("newton", help="classical Newton baseline")
    _add_common_arguments(newton)
    newton.add_argument("--x0", required=True, help="starting point, comma separated")
    newton.add_argument("--tol", help="residual tolerance")
    newton.add_argument("--damping", help="step damping in (0, 1]")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Build a RunConfig from parsed arguments; unset flags keep the model defaults."""
    values = {
        key: value for key, value in vars(args).items()
        if key not in ("command", "log_level") and value is not None
    }
    return RunConfig(**values)


def main(argv: Optional[List[str]] = None) -> int:
    """Command-line entry point. Returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    setup_logging(args.log_level)
    logger = logging.getLogger("qroot")

    try:
        config = config_from_args(args)
        logger.info(f"Running {args.command} on {config.system_path}")
        document = COMMANDS[args.command](config)
        text = write_document(document, config.output_path)
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE
    except QRootError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except jsonschema.ValidationError as e:
        logger.error(f"Result document failed schema validation: {e.message}")
        return EXIT_USAGE

    if config.output_path is None:
        sys.stdout.write(text)
    logger.info(f"{args.command} finished")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
