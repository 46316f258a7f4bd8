# This file is part of Twobox
#
# Twobox is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Twobox is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with Twobox.  If not, see <http://www.gnu.org/licenses/>.

"""Command line argument parser."""

import argparse
import logging
import sys
import textwrap
from collections.abc import Callable
from pathlib import Path
from typing import NamedTuple

import pydantic

from twobox import __version__
from twobox.cli import commands
from twobox.config import Config
from twobox.exceptions import (
    BadDeltaError,
    BadPrimeError,
    ConfigLoaderError,
    DocumentError,
    TwoBoxError,
    UnknownNameError,
)
from twobox.linalg import Tolerance


log = logging.getLogger(__name__)
log_levels = [lv.lower() for lv in logging.getLevelNamesMapping()]

EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class Doc(NamedTuple):
    """Parsed docstring."""

    help: str  # noqa: A003
    desc: str


def get_doc(func: Callable) -> Doc:
    """Extract help message and description from function docstring."""
    doc = func.__doc__
    if isinstance(doc, str):
        doc = textwrap.dedent(doc).strip().split('\n\n')
        return Doc(doc[0][0].lower() + doc[0][1:], '\n\n'.join(doc))
    return Doc('', '')


def get_parser() -> argparse.ArgumentParser:
    """Return command line argument parser."""
    root = argparse.ArgumentParser(
        prog='twobox',
        description='Build, verify and classify structures of 2-boxes.',
    )
    root.add_argument(
        '-V',
        '--version',
        action='version',
        version=__version__,
    )
    root.add_argument(
        '-l',
        '--log-level',
        dest='root_log_level',
        type=str.lower,
        choices=log_levels,
        metavar='LEVEL',
        help='log level',
    )

    # common options
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '-l',
        '--log-level',
        type=str.lower,
        choices=log_levels,
        metavar='LEVEL',
        help='log level',
    )
    common.add_argument(
        '--tol',
        type=float,
        metavar='X',
        help='relative equality tolerance [default: 1e-9, env: TBX_TOL]',
    )
    common.add_argument(
        '--config',
        type=Path,
        metavar='FILE',
        help='configuration file [env: TBX_CONFIG]',
    )

    # options of commands reading documents
    reading = argparse.ArgumentParser(add_help=False)
    reading.add_argument(
        '-f',
        '--force',
        action='store_true',
        default=False,
        help='do not verify axioms of loaded documents',
    )

    # options of commands writing documents
    writing = argparse.ArgumentParser(add_help=False)
    writing.add_argument(
        '-o',
        '--output',
        type=Path,
        metavar='FILE',
        help='write tbx-1 document to FILE instead of stdout',
    )

    # machine readable output
    machine = argparse.ArgumentParser(add_help=False)
    machine.add_argument(
        '--json',
        action='store_true',
        default=False,
        help='print JSON instead of text',
    )

    subparsers = root.add_subparsers(dest='command', metavar='COMMAND')

    def add_command(
        name: str, func: Callable, parents: list[argparse.ArgumentParser]
    ) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(
            name,
            parents=[common, *parents],
            formatter_class=argparse.RawTextHelpFormatter,
            help=get_doc(func).help,
            description=get_doc(func).desc,
        )
        parser.set_defaults(func=func)
        return parser

    # make subcommand
    make = add_command('make', commands.make, [writing])
    make.add_argument('name', nargs='?', help='catalog name')
    make.add_argument(
        '-p',
        '--param',
        action='append',
        metavar='K=V',
        help='catalog parameter, may be repeated',
    )
    make.add_argument(
        '--list',
        action='store_true',
        default=False,
        help='list catalog names and exit',
    )

    # free subcommand
    free = add_command('free', commands.free, [writing, reading])
    free.add_argument('left', help='catalog name or tbx-1 file')
    free.add_argument('right', help='catalog name or tbx-1 file')

    # tensor subcommand
    tensor = add_command('tensor', commands.tensor, [writing, reading])
    tensor.add_argument('left', help='catalog name or tbx-1 file')
    tensor.add_argument('right', help='catalog name or tbx-1 file')

    # dual subcommand
    dual = add_command('dual', commands.dual, [writing, reading])
    dual.add_argument('structure', help='catalog name or tbx-1 file')

    # verify subcommand
    verify = add_command('verify', commands.verify, [machine])
    verify.add_argument('file', type=Path, help='tbx-1 file')

    # classify subcommand
    classify = add_command('classify', commands.classify, [reading, machine])
    classify.add_argument('file', type=Path, help='tbx-1 file')

    # report subcommand
    report = add_command('report', commands.report, [reading, machine])
    report.add_argument('file', type=Path, help='tbx-1 file')

    # iso subcommand
    iso = add_command('iso', commands.iso, [reading, machine])
    iso.add_argument('left', help='catalog name or tbx-1 file')
    iso.add_argument('right', help='catalog name or tbx-1 file')

    return root


def _setup_logging(args: argparse.Namespace, config: Config) -> None:
    log_level = (
        args.root_log_level or args.log_level or config['log']['level']
    )
    if isinstance(log_level, str) and log_level.lower() in log_levels:
        logging.basicConfig(
            level=logging.getLevelNamesMapping()[log_level.upper()],
            filename=config['log']['file'],
        )


def _tolerance(args: argparse.Namespace, config: Config) -> Tolerance:
    if args.tol is None:
        return config.tolerance
    return Tolerance(**{**config['tolerance'], 'eq_tol': args.tol})


def main(argv: list[str] | None = None) -> int:
    """Run command line interface and return exit status."""
    parser = get_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 0
    try:
        config = Config(args.config)
        _setup_logging(args, config)
        log.debug('CLI started with args: %s', args)
        ctx = commands.Context(config, _tolerance(args, config))
        return args.func(ctx, args)
    except pydantic.ValidationError as e:
        print(f'error: bad tolerance: {e}', file=sys.stderr)
        return EXIT_USAGE
    except (
        ConfigLoaderError,
        DocumentError,
        UnknownNameError,
        BadDeltaError,
        BadPrimeError,
        OSError,
    ) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except TwoBoxError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_NEGATIVE
    except KeyboardInterrupt:
        return EXIT_NEGATIVE


def run() -> None:
    """Run argument parser."""
    sys.exit(main())
