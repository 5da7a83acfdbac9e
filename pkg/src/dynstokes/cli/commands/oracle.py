"""
Oracle command for dynstokes CLI
"""

from .base import run_command


def oracle_command(args):
    """
    Compare closed-form symbols with the finite-difference oracle

    Args:
        args: Command line arguments

    Returns:
        int: Exit code
    """
    return run_command(args, "oracle")


def register_oracle_parser(subparsers, parents):
    """
    Register the oracle command parser

    Args:
        subparsers: Subparsers object from argparse
        parents: Parent parsers with the shared flags
    """
    subparsers.add_parser(
        "oracle", parents=parents, help="Run the ODE oracle over the configured modes"
    )
