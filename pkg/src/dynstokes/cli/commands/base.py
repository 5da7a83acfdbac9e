"""
Base module for command-related functionality
"""

import argparse
import logging

from pydantic import ValidationError

from ...models.errors import InvalidParameterError
from ...services.config_service import ConfigService
from ...services.run_service import RunService
from ...utils.config import ConfigFileError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID_CONFIG = 2


def configure_logging(verbose=False):
    """
    Configure the root logger once for a CLI run

    Args:
        verbose: Log DEBUG messages as well
    """
    log_level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def common_parser():
    """
    Parent parser with the flags shared by every subcommand

    Returns:
        argparse.ArgumentParser without help
    """
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=str, default=None, help="YAML configuration file")
    parser.add_argument("--out", type=str, default=None, help="Output directory")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a configuration key (repeatable)",
    )
    parser.add_argument("--workers", type=int, default=None, help="Worker threads")
    parser.add_argument("--seed", type=int, default=None, help="Seed of the boundary data")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable debug output"
    )
    return parser


def build_config_service(args):
    """
    Load the configuration and apply command-line overrides

    Args:
        args: Command line arguments

    Returns:
        ConfigService
    """
    service = ConfigService(args.config)
    service.apply_overrides(args.set)
    if args.out is not None:
        service.set("run.out_dir", args.out)
    if args.workers is not None:
        service.set("run.workers", args.workers)
    if args.seed is not None:
        service.set("run.seed", args.seed)
    return service


def run_command(args, command, **options):
    """
    Validate the configuration, run a subcommand and write its report

    Args:
        args: Command line arguments
        command: Subcommand name
        **options: Options passed to the run service

    Returns:
        int: Exit code (0 passed, 1 violated or failed, 2 invalid configuration)
    """
    configure_logging(getattr(args, "verbose", False))
    logger = logging.getLogger("dynstokes.cli")

    try:
        config_service = build_config_service(args)
        config = config_service.run_config(command)
        resolved = config_service.resolved(command)
    except (ConfigFileError, InvalidParameterError, ValidationError) as e:
        logging.error(f"Invalid configuration: {str(e)}")
        return EXIT_INVALID_CONFIG

    try:
        service = RunService(config)
        result = service.run(command, **options)
        path = service.write_report(command, result, resolved)
        if result.success:
            logger.info(f"{command}: all checks passed ({path})")
        else:
            logger.warning(f"{command}: {result.error} ({path})")
        return result.exit_code
    except InvalidParameterError as e:
        logging.error(f"Invalid configuration: {str(e)}")
        return EXIT_INVALID_CONFIG
    except Exception as e:
        logging.error(f"Error: {str(e)}", exc_info=True)
        return EXIT_VIOLATION
