"""
Main module for dynstokes CLI commands
"""

import argparse
import sys

from .base import common_parser
from .certify import certify_command, register_certify_parser
from .oracle import oracle_command, register_oracle_parser
from .solve import register_solve_parser, solve_command
from .sweep import register_sweep_parser, sweep_command
from .verify import register_verify_parser, verify_command


def main(argv=None):
    """
    Main entry point for the CLI

    Args:
        argv: Argument list (defaults to sys.argv[1:])

    Returns:
        int: Exit code
    """
    # Create the top-level parser
    parser = argparse.ArgumentParser(
        prog="dynstokes",
        description=(
            "Solver and verification harness for the half-space Stokes resolvent "
            "problem with dynamic boundary conditions"
        ),
    )

    # Create subparsers for commands
    subparsers = parser.add_subparsers(
        title="commands", dest="command", help="Command to execute"
    )

    # Register command parsers
    parents = [common_parser()]
    register_solve_parser(subparsers, parents)
    register_verify_parser(subparsers, parents)
    register_oracle_parser(subparsers, parents)
    register_certify_parser(subparsers, parents)
    register_sweep_parser(subparsers, parents)

    # Parse arguments
    args = parser.parse_args(argv)

    # Execute the appropriate command
    if args.command == "solve":
        return solve_command(args)
    elif args.command == "verify":
        return verify_command(args)
    elif args.command == "oracle":
        return oracle_command(args)
    elif args.command == "certify":
        return certify_command(args)
    elif args.command == "sweep":
        return sweep_command(args)
    else:
        parser.print_help()
        return 0


if __name__ == "__main__":
    sys.exit(main())
