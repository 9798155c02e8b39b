# -*- coding: utf-8 -*-


import argparse
import dataclasses
import logging
import sys

from typing import List, Optional, Tuple

from ._catalog import catalog
from ._config import load_config
from ._errors import ConfigError, RMTError
from ._harness import run_experiment
from ._identities import identity_suite
from ._mp import mp_table
from ._report import RunReport
from ._version import __version__


#: Everything passed.
EXIT_PASS = 0
#: A declared threshold failed.
EXIT_FAIL = 1
#: Bad usage, missing file or invalid input.
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore
        raise ConfigError('argv', message)


def _dims(value: str) -> Tuple[int, int]:
    try:
        p, n = (int(v) for v in value.lower().split('x'))
    except ValueError:
        raise argparse.ArgumentTypeError('expected PxN, got %r' % value)
    return p, n


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='rmtk', description='Random matrix laboratory.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='log progress at INFO level')
    commands = parser.add_subparsers(dest='command', parser_class=_Parser)
    commands.required = True

    run = commands.add_parser('run', help='run an experiment config')
    run.add_argument('config')
    run.add_argument('--output', help='report path (overrides the config)')
    run.add_argument('--workers', type=int, default=None)

    commands.add_parser('catalog', help='list atom distributions')

    mp = commands.add_parser('mp', help='Marchenko-Pastur law')
    tables = mp.add_subparsers(dest='action', parser_class=_Parser)
    tables.required = True
    table = tables.add_parser('table', help='tabulate density and CDF')
    table.add_argument('--y', type=float, required=True)
    table.add_argument('--points', type=int, default=401)
    table.add_argument('--out', default='-', help='CSV path, - for stdout')

    identities = commands.add_parser('identities',
                                     help='run the identity suite')
    identities.add_argument('--dims', type=_dims, default=(4, 6))
    identities.add_argument('--seeds', type=int, default=100)
    identities.add_argument('--master-seed', type=int, default=0)
    identities.add_argument('--tolerance', type=float, default=1e-8)

    report = commands.add_parser('report', help='inspect reports')
    reports = report.add_subparsers(dest='action', parser_class=_Parser)
    reports.required = True
    show = reports.add_parser('show', help='print a report summary')
    show.add_argument('path')
    return parser


def _run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.output:
        config = dataclasses.replace(config, output=args.output)
    report = run_experiment(config, workers=args.workers)
    if report is None:
        return EXIT_USAGE
    print(report.summary())
    return EXIT_PASS if report.passed else EXIT_FAIL


def _mp_table(args: argparse.Namespace) -> int:
    frame = mp_table(args.y, points=args.points)
    if args.out == '-':
        frame.to_csv(sys.stdout, index=False, float_format='%.10g')
    else:
        frame.to_csv(args.out, index=False, float_format='%.17g')
    return EXIT_PASS


def _identities(args: argparse.Namespace) -> int:
    p, n = args.dims
    if p > n:
        p, n = n, p
    result = identity_suite(p, n, args.seeds, master_seed=args.master_seed)
    for name, value in result._asdict().items():
        print('%s: %s' % (name, value))
    return EXIT_PASS if result.max_residual < args.tolerance else EXIT_FAIL


def _show(args: argparse.Namespace) -> int:
    report = RunReport.read(args.path)
    print(report.summary())
    return EXIT_PASS if report.passed else EXIT_FAIL


def main(argv: Optional[List[str]]=None) -> int:
    """Entry point of the ``rmtk`` command.

    :return: 0 when every check passes, 1 when a threshold fails, 2 on usage
     errors, missing files and invalid configs.

    .. versionadded:: 0.1

    """

    try:
        args = _parser().parse_args(argv)
    except ConfigError as error:
        print('rmtk: %s' % error, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(asctime)s %(levelname)s %(message)s',
    )
    try:
        if args.command == 'run':
            return _run(args)
        if args.command == 'catalog':
            print('\n'.join(catalog()))
            return EXIT_PASS
        if args.command == 'mp':
            return _mp_table(args)
        if args.command == 'identities':
            return _identities(args)
        return _show(args)
    except (OSError, RMTError) as error:
        logging.error('%s', error)
        print('rmtk: %s' % error, file=sys.stderr)
        return EXIT_USAGE
