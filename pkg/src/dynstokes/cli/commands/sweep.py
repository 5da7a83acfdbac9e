"""
Sweep command for dynstokes CLI
"""

from ...models.run_config import EXPERIMENTS
from .base import run_command


def sweep_command(args):
    """
    Run scaling experiments

    Args:
        args: Command line arguments

    Returns:
        int: Exit code
    """
    return run_command(args, "sweep", experiment=args.experiment)


def register_sweep_parser(subparsers, parents):
    """
    Register the sweep command parser

    Args:
        subparsers: Subparsers object from argparse
        parents: Parent parsers with the shared flags
    """
    sweep_parser = subparsers.add_parser(
        "sweep", parents=parents, help="Run decay, alpha, gradient or proxy experiments"
    )
    sweep_parser.add_argument(
        "--experiment",
        choices=EXPERIMENTS,
        default=None,
        help="Run only one experiment (default: sweep.experiment from the configuration)",
    )
