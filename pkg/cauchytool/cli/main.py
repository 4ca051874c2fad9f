import argparse
import logging
import sys
from typing import List, Optional

from cauchytool import __version__
from cauchytool.cli.commands import COMMAND_HANDLERS
from cauchytool.cli.config import COMMANDS, RunConfig
from cauchytool.errors import (
    CauchyToolError, ConfigError, InvalidParameterError, InvalidPlanError, NeedsLongerTableError,
    ResourceLimitError,
)


LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_NEEDS_LONGER_TABLE = 3
EXIT_RESOURCE_LIMIT = 4

LOG_FORMAT = '%(levelname)-7s %(name)-22s %(message)s'


def configure_logging(level: str) -> None:
    """
    Install a single stream handler on the root logger.
    """
    root = logging.getLogger()
    root.setLevel(level.upper())
    for handler in list(root.handlers):
        if getattr(handler, '_cauchytool', False):
            root.removeHandler(handler)

    ch = logging.StreamHandler()
    ch.setFormatter(logging.Formatter(LOG_FORMAT))
    ch._cauchytool = True  # type: ignore
    root.addHandler(ch)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cauchytool',
        description='Exact kernels and Monte Carlo checks for the Cauchy directed polymer.',
    )
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', help='JSON run configuration')
    common.add_argument('--seed', type=int, help='master seed (unsigned 64-bit)')
    common.add_argument('--out', metavar='DIR', help='output directory')
    common.add_argument('--cache', metavar='DIR', help='overlap table cache directory')
    common.add_argument('--threads', type=int, help='worker threads for replicas')
    common.add_argument('--log-level', default=None, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True
    for name in COMMANDS:
        commands.add_parser(name, parents=[common], help='run the {} command'.format(name))

    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """
    Config file first, flags on top.
    """
    config = RunConfig.load(args.config) if args.config else RunConfig()
    for name in ('seed', 'out', 'cache', 'threads', 'log_level'):
        value = getattr(args, name)
        if value is not None:
            setattr(config, name, value)
    return config


def exit_code(error: CauchyToolError) -> int:
    if isinstance(error, (ConfigError, InvalidParameterError, InvalidPlanError)):
        return EXIT_USAGE
    if isinstance(error, NeedsLongerTableError):
        return EXIT_NEEDS_LONGER_TABLE
    if isinstance(error, ResourceLimitError):
        return EXIT_RESOURCE_LIMIT
    return EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args)
        configure_logging(config.log_level)
        config.validate(args.command)

        LOG.info("Running %s with config %s", args.command, config.fingerprint()[:12])
        paths = COMMAND_HANDLERS[args.command](config)
        LOG.info("Finished %s, wrote %d file(s)", args.command, len(paths))

    except NeedsLongerTableError as e:
        LOG.error("%s (required D threshold: %.6g)", e, e.threshold)
        return EXIT_NEEDS_LONGER_TABLE

    except CauchyToolError as e:
        LOG.error("%s", e)
        return exit_code(e)

    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
