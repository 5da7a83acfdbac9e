"""
Solve command for dynstokes CLI
"""

from .base import run_command


def solve_command(args):
    """
    Solve the configured problem and dump the fields

    Args:
        args: Command line arguments

    Returns:
        int: Exit code
    """
    return run_command(args, "solve")


def register_solve_parser(subparsers, parents):
    """
    Register the solve command parser

    Args:
        subparsers: Subparsers object from argparse
        parents: Parent parsers with the shared flags
    """
    subparsers.add_parser(
        "solve",
        parents=parents,
        help="Solve the boundary-driven problem and write field dumps",
    )
