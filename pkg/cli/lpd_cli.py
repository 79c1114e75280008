"""
LPD Step Toolkit command line

Parses the subcommand and flags, builds the RunConfig, runs the command
and writes its CSV with the JSON metadata line.

Exit codes: 0 on success, 2 when `validate` finds failing checks, 1 on any
toolkit error or bad usage.
"""

import argparse
import logging
import sys

from cli.commands import COMMANDS
from cli.config import CASES, PHI_MODES, POWER_BASES, build_config, load_config
from modules.errors import LPDError
from modules.log import configure_logging
from modules.packing import pack_rows

logger = logging.getLogger(__name__)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting."""

    def error(self, message):
        raise _UsageError(message)


def _grid(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be 'start,stop,count'")
    return [float(parts[0]), float(parts[1]), int(parts[2])]


def _floats(text):
    return [float(part) for part in text.split(",") if part]


def build_parser():
    """
    Parse command line arguments

    Returns:
        argparse.ArgumentParser: Parser with one positional subcommand and
            the shared flags.
    """
    parser = _Parser(prog="run_toolkit.py", description="LPD step toolkit")
    parser.add_argument("command", choices=sorted(COMMANDS), help="Subcommand to run")
    parser.add_argument("--config", type=str, default=None, help="JSON configuration file")
    parser.add_argument("--out", type=str, default=None, help="Output CSV path")
    parser.add_argument("--mode", choices=PHI_MODES, default=None, help="Local phase convention")
    parser.add_argument("--case", choices=CASES, default=None, help="Force the scattering case")
    parser.add_argument("--power-base", choices=POWER_BASES, default=None,
                        help="Power bases of the asymptotic coefficients")
    parser.add_argument("--A", dest="A", type=float, default=None, help="Step height")
    parser.add_argument("--gamma", type=float, default=None, help="Quartic dispersion coefficient")
    parser.add_argument("--alpha", type=float, default=None, help="Soliton phase")
    parser.add_argument("--t", dest="t", type=float, default=None, help="Soliton time")
    parser.add_argument("--grid", type=_grid, default=None, help="x grid 'start,stop,count'")
    parser.add_argument("--mu", type=_floats, default=None, help="Ray slopes 'mu1,mu2,...'")
    parser.add_argument("--times", type=_floats, default=None, help="Times 't1,t2,...'")
    parser.add_argument("--t-end", dest="t_end", type=float, default=None, help="Simulation end time")
    parser.add_argument("--workers", type=int, default=None, help="Validation threads")
    parser.add_argument("--log-level", type=str, default="WARNING", help="Logging level")
    parser.add_argument("--log-file", type=str, default=None, help="Also log to this file")
    return parser


def overrides_from_args(args):
    """Map the given flags onto configuration keys."""
    overrides = {}
    profile = {key: getattr(args, key) for key in ("A", "gamma") if getattr(args, key) is not None}
    if profile:
        overrides["profile"] = profile
    command = {}
    for flag, key in (("alpha", "alpha"), ("t", "t"), ("grid", "x_range"), ("t_end", "t_end"),
                      ("workers", "workers"), ("times", "times")):
        if getattr(args, flag) is not None:
            command[key] = getattr(args, flag)
    if args.mu is not None:
        command["mu"] = args.mu
        command["mus"] = args.mu
    if command:
        overrides["command"] = command
    if args.out:
        overrides["output"] = {"path": args.out}
    if args.mode:
        overrides["phi_mode"] = args.mode
    if args.case:
        overrides["case"] = args.case
    if args.power_base:
        overrides["power_base"] = args.power_base
    return overrides


def main(argv=None):
    """
    Run one subcommand.

    Args:
        argv (list, optional): Arguments without the program name.

    Returns:
        int: Exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(sys.argv[1:] if argv is None else argv)
    except _UsageError as exc:
        print(parser.format_usage(), end="", file=sys.stderr)
        print(f"Error: {exc}", file=sys.stderr)
        return 1

    configure_logging(args.log_level, args.log_file)
    try:
        overrides = overrides_from_args(args)
        config = load_config(args.config, overrides) if args.config else build_config(None, overrides)
        output = COMMANDS[args.command](config)
        metadata = {"command": args.command, **config.metadata(), **output.metadata}
        pack_rows(config.output_path, metadata, output.columns, output.rows)
    except LPDError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        logger.debug("[CLI] %s failed", args.command, exc_info=True)
        return 1

    print(f"[CLI] {args.command}: {len(output.rows)} rows written to {config.output_path}")
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
