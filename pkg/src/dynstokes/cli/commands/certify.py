"""
Certify command for dynstokes CLI
"""

from ...models.run_config import CHECKS
from .base import run_command


def certify_command(args):
    """
    Run hard inequality checks and multiplier certificates

    Args:
        args: Command line arguments

    Returns:
        int: Exit code (1 on any violation)
    """
    return run_command(args, "certify", check=args.check)


def register_certify_parser(subparsers, parents):
    """
    Register the certify command parser

    Args:
        subparsers: Subparsers object from argparse
        parents: Parent parsers with the shared flags
    """
    certify_parser = subparsers.add_parser(
        "certify",
        parents=parents,
        help="Certify multiplier conditions and kernel inequalities",
    )
    certify_parser.add_argument(
        "--check",
        choices=CHECKS,
        default=None,
        help="Run only one check (default: certify.check from the configuration)",
    )
