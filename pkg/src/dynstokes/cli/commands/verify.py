"""
Verify command for dynstokes CLI
"""

from .base import run_command


def verify_command(args):
    """
    Solve and run the residual verifiers

    Args:
        args: Command line arguments

    Returns:
        int: Exit code (1 when a residual exceeds its tolerance)
    """
    return run_command(args, "verify", source=args.source)


def register_verify_parser(subparsers, parents):
    """
    Register the verify command parser

    Args:
        subparsers: Subparsers object from argparse
        parents: Parent parsers with the shared flags
    """
    verify_parser = subparsers.add_parser(
        "verify",
        parents=parents,
        help="Check interior, boundary, biharmonic and weak-form identities",
    )
    verify_parser.add_argument(
        "--from",
        dest="source",
        type=str,
        default=None,
        help="Output directory of an earlier solve to reuse and reproduce",
    )
