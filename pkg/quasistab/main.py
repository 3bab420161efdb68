#!/usr/bin/env python3
"""
Quasistable Curve Toolkit
Command line front end: reads graph documents and dispatches subcommands.
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

from quasistab import __version__
from quasistab.config import logger
from quasistab.models import MalformedInputError, QuasistabError
from quasistab.handlers import (
    validate_command,
    classify_command,
    status_command,
    info_command,
    export_dot_command,
    dm_check_command,
    check_balanced_command,
    enumerate_command,
    twist_command,
    criteria_command,
    criterion_names,
    contract_command,
    stabilize_command,
    stable_model_command,
    strip_command,
    lift_command,
    forget_all_command,
    fibers_command,
)

Handler = Callable[[argparse.Namespace], int]

COMMANDS: Dict[str, Handler] = {
    "validate": validate_command,
    "classify": classify_command,
    "status": status_command,
    "info": info_command,
    "export-dot": export_dot_command,
    "dm-check": dm_check_command,
    "check-balanced": check_balanced_command,
    "enumerate": enumerate_command,
    "twist": twist_command,
    "criteria": criteria_command,
    "contract": contract_command,
    "stabilize": stabilize_command,
    "stable-model": stable_model_command,
    "strip": strip_command,
    "lift": lift_command,
    "forget-all": forget_all_command,
    "fibers": fibers_command,
}

MDEG_HELP = "multidegree as id=deg,... or the name of one stored in the document"


# ==================== Parser ====================


def _graph_command(subparsers, name: str, help_text: str) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help_text)
    parser.add_argument("graph", help="graph document (JSON)")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def _with_output(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument("--output", "-o", help="save the resulting graph document here")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasistab",
        description="Balanced line bundles on quasistable pointed curves.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)

    # Graph commands
    _graph_command(subparsers, "validate", "check the graph document")
    _graph_command(subparsers, "classify", "tails, bridges, core and exceptional vertices")
    _graph_command(subparsers, "status", "semistable, stable and quasistable flags")
    _graph_command(subparsers, "info", "genus, markings and stack dimension")
    sub = subparsers.add_parser("export-dot", help="Graphviz DOT rendering")
    sub.add_argument("graph", help="graph document (JSON)")
    sub = subparsers.add_parser("dm-check", help="gcd(d - g + 1, 2g - 2) = 1 test")
    sub.add_argument("-d", type=int, required=True)
    sub.add_argument("-g", type=int, required=True)
    sub.add_argument("--json", action="store_true", help="machine-readable output")

    # Degree commands
    sub = _graph_command(subparsers, "check-balanced", "test a multidegree for balance")
    sub.add_argument("multidegree", help=MDEG_HELP)
    sub = _graph_command(subparsers, "enumerate", "all balanced multidegrees of a total degree")
    sub.add_argument("-d", type=int, required=True)
    sub = _graph_command(subparsers, "twist", "twist a balanced multidegree by omega^m")
    sub.add_argument("multidegree", help=MDEG_HELP)
    sub.add_argument("-m", type=int, required=True)
    sub = subparsers.add_parser("criteria", help="degree criteria on connected subcurves")
    sub.add_argument("name", choices=criterion_names())
    sub.add_argument("graph", help="graph document (JSON)")
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--mdeg", dest="multidegree", help=MDEG_HELP)
    sub.add_argument("-m", type=int, default=2, help="power of the dualizing sheaf")
    sub.add_argument("-k", type=int, default=0, help="twist exponent, at most 1")
    sub.add_argument("--start", type=int, default=0, help="first degree of the threshold search")
    sub.add_argument("--drop-last", action="store_true", help="leave out the last marking")

    # Morphism commands
    sub = _with_output(_graph_command(subparsers, "contract", "forget the last marking"))
    sub.add_argument("multidegree", help=MDEG_HELP)
    sub = _with_output(_graph_command(subparsers, "stabilize", "add a marking at a point"))
    sub.add_argument("multidegree", help=MDEG_HELP)
    sub.add_argument("--at", required=True, help="vertex:<id>, node:<edge-id> or marking:<label>")
    _with_output(_graph_command(subparsers, "stable-model", "contract destabilizing vertices"))
    sub = _with_output(_graph_command(subparsers, "strip", "reduce to the unpointed curve"))
    sub.add_argument("--bridges", help="raised chain vertices as A,B or none")
    sub.add_argument("--mdeg", dest="multidegree", help=MDEG_HELP)
    sub = _with_output(_graph_command(subparsers, "lift", "lift stripped degrees to the graph"))
    sub.add_argument("degrees", help="degrees on the stripped curve as id=deg,...")
    sub.add_argument("--bridges", required=True, help="raised chain vertices as A,B or none")
    sub = _with_output(_graph_command(subparsers, "forget-all", "forget every marking"))
    sub.add_argument("multidegree", help=MDEG_HELP)
    sub = _graph_command(subparsers, "fibers", "balanced census over quasistable blow-ups")
    sub.add_argument("-d", type=int, required=True)

    return parser


# ==================== Entry Point ====================


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch to the handler and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        return COMMANDS[args.command](args)
    except QuasistabError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e.kind}: {e}", file=sys.stderr)
        return 2 if isinstance(e, MalformedInputError) else 1


def main() -> None:
    """Run the toolkit."""
    sys.exit(run())


if __name__ == "__main__":
    main()
