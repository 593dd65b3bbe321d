"""
Command-line entry point.

    python cli.py decompose   --amplitudes 0,0,0.7071067811865476,0,-0.7071067811865476,0,0,0
    python cli.py observables --state state.json --xcheck
    python cli.py overlap     --state a.json --other-state b.json --format structured
    python cli.py bell-curve  --samples 181
    python cli.py selfcheck

Reports go to standard output, diagnostics to standard error.
Use --amplitudes=... when the first value is negative.
Exit status: 0 success, 1 domain / convergence error, 2 usage or parse error.
"""

import sys
import logging
import argparse
from typing import List, Optional

from config import Config
from engine.exceptions import ConvergenceError, DomainError, UsageError
from models import StateSpec
from services import StateAnalysisService
from utils import HealthChecker, render_curve, render_health, render_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _add_output_options(parser: argparse.ArgumentParser, default_format: str) -> None:
    output_group = parser.add_argument_group("Output Options")
    output_group.add_argument("--format", choices=["text", "structured", "csv"], default=default_format,
                              help=f"Report format (default: {default_format})")
    output_group.add_argument("--xcheck", action="store_true",
                              help="Cross-check against the matrix oracle and append residual fields")


def _add_state_options(parser: argparse.ArgumentParser, prefix: str = "", label: str = "state") -> None:
    state_group = parser.add_argument_group(f"{label.capitalize()} Options")
    source = state_group.add_mutually_exclusive_group(required=True)
    source.add_argument(f"--{prefix}state", metavar="PATH",
                        help=f"JSON document with the {label} amplitudes ('-' reads standard input)")
    source.add_argument(f"--{prefix}amplitudes", metavar="RE,IM,...",
                        help="8 comma-separated reals: re00,im00,re01,im01,re10,im10,re11,im11")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qga",
        description=f"{Config.APP_NAME} v{Config.APP_VERSION}: two-qubit states in geometric algebra",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    decompose = subparsers.add_parser("decompose", help="Schmidt decomposition of a two-qubit state")
    _add_state_options(decompose)
    decompose.add_argument("--normalize", action="store_true", help="Rescale the input to unit norm")
    _add_output_options(decompose, "text")

    observables = subparsers.add_parser("observables", help="psi E psi~, psi J psi~, reduced polarizations, density coefficients")
    _add_state_options(observables)
    observables.add_argument("--normalize", action="store_true", help="Rescale the input to unit norm")
    _add_output_options(observables, "text")

    overlap = subparsers.add_parser("overlap", help="Measurement-overlap probability |<psi|phi>|^2")
    _add_state_options(overlap)
    _add_state_options(overlap, prefix="other-", label="other state")
    overlap.add_argument("--normalize", action="store_true", help="Rescale both inputs to unit norm")
    _add_output_options(overlap, "text")

    bell_curve = subparsers.add_parser("bell-curve", help="Singlet joint-measurement probability against angle")
    bell_curve.add_argument("--samples", type=int, default=Config.BELL_CURVE_DEFAULT_SAMPLES,
                            help=f"Number of angles spanning [0, pi] (default: {Config.BELL_CURVE_DEFAULT_SAMPLES})")
    _add_output_options(bell_curve, "csv")

    selfcheck = subparsers.add_parser("selfcheck", help="Run the algebraic identity checks")
    selfcheck.add_argument("--format", choices=["text", "structured", "csv"], default="text")

    return parser


def _load_spec(path: Optional[str], inline: Optional[str], normalize: bool) -> StateSpec:
    if inline is not None:
        return StateSpec.from_inline(inline, normalize)
    if path == "-":
        return StateSpec.from_text(sys.stdin.read()).with_normalize(normalize)
    return StateSpec.from_file(path).with_normalize(normalize)


def _run(args: argparse.Namespace) -> int:
    service = StateAnalysisService()

    if args.command == "decompose":
        record = service.decompose(_load_spec(args.state, args.amplitudes, args.normalize), xcheck=args.xcheck)
        sys.stdout.write(render_report(record, args.format))
        return EXIT_OK

    if args.command == "observables":
        record = service.observables(_load_spec(args.state, args.amplitudes, args.normalize), xcheck=args.xcheck)
        sys.stdout.write(render_report(record, args.format))
        return EXIT_OK

    if args.command == "overlap":
        first = _load_spec(args.state, args.amplitudes, args.normalize)
        second = _load_spec(args.other_state, args.other_amplitudes, args.normalize)
        record = service.overlap(first, second, xcheck=args.xcheck)
        sys.stdout.write(render_report(record, args.format))
        return EXIT_OK

    if args.command == "bell-curve":
        frame = service.bell_curve(args.samples, xcheck=args.xcheck)
        sys.stdout.write(render_curve(frame, args.format))
        return EXIT_OK

    health = HealthChecker({'analysis': service}).get_comprehensive_health()
    sys.stdout.write(render_health(health, args.format))
    return EXIT_OK if health['status'] == 'healthy' else EXIT_DOMAIN


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, Config.LOG_LEVEL, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already written its diagnostic
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    try:
        return _run(args)
    except (DomainError, ConvergenceError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DOMAIN
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except Exception as e:
        logger.exception(f"❌ Unexpected failure in '{args.command}': {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
