################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 26-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Command line entry point.

Usage::

    ehcrn [--out FILE] sweep CONFIG
    ehcrn [--out FILE] optimize [--along-axis] CONFIG
    ehcrn validate [CONFIG]

Exit codes: 0 on success, 1 when the configuration is invalid, 2 when a
row failed or a validation check did not pass.
"""

import argparse
import logging
import sys
from contextlib import ExitStack
from dataclasses import replace
from typing import List, Optional

from ehcrn import __version__
from ehcrn.errors import ConfigError
from ehcrn.logging import CSVLogger, InteractiveLogger, TextLogger
from ehcrn.sweep import SweepSpec, parse_config, run_optimize, run_sweep, \
    validate

logger = logging.getLogger('ehcrn')

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILED = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ehcrn',
        description='Outage and throughput of an energy-harvesting relay '
                    'in an underlay cognitive radio network.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    parser.add_argument('--seed', type=int, default=None,
                        help='root seed of the Monte Carlo engine')
    parser.add_argument('--trials', type=int, default=None,
                        help='Monte Carlo trials per row')
    parser.add_argument('--out', type=str, default=None,
                        help='output file, standard output by default')
    parser.add_argument('--workers', type=int, default=None,
                        help='thread-pool size for rows and Monte Carlo '
                             'chunks')
    parser.add_argument('--quiet', action='store_true',
                        help='only write the results')
    parser.add_argument('--verbose', action='store_true',
                        help='log debug messages on standard error')

    commands = parser.add_subparsers(dest='command', required=True)
    sweep = commands.add_parser('sweep', help='evaluate a parameter sweep')
    sweep.add_argument('config', help='run configuration file')
    optimize = commands.add_parser(
        'optimize', help='find the optimal rho of every requested mode')
    optimize.add_argument('config', help='run configuration file')
    optimize.add_argument('--along-axis', action='store_true',
                          help='optimize rho again at every axis value')
    check = commands.add_parser(
        'validate', help='run the analytic against Monte Carlo agreement '
                         'suite')
    check.add_argument('config', nargs='?', default=None,
                       help='configuration supplying trials and seed')
    return parser


def load_spec(path: str, seed: Optional[int] = None,
              trials: Optional[int] = None) -> SweepSpec:
    """
    Reads and validates a run configuration, then applies the command line
    overrides.

    :raises ConfigError: if the file is malformed or invalid.
    """
    with open(path, 'r') as f:
        spec = parse_config(f.read())
    overrides = {}
    if seed is not None:
        overrides['seed'] = seed
    if trials is not None:
        overrides['trials'] = trials
    return replace(spec, **overrides) if overrides else spec


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)

    try:
        spec = None
        if args.config is not None:
            spec = load_spec(args.config, args.seed, args.trials)
            if getattr(args, 'along_axis', False):
                spec = replace(spec, reoptimize=True)
    except OSError as e:
        logger.error('cannot read %s: %s', args.config, e)
        return EXIT_CONFIG
    except ConfigError as e:
        logger.error('invalid configuration: %s', e)
        return EXIT_CONFIG

    with ExitStack() as stack:
        out = sys.stdout
        if args.out is not None:
            out = stack.enter_context(open(args.out, 'w', newline=''))

        if args.command == 'validate':
            trials = spec.trials if spec is not None else 10 ** 6
            optimize_trials = spec.optimize_trials if spec is not None \
                else 10 ** 5
            seed = spec.seed if spec is not None else 0
            if args.trials is not None:
                trials = args.trials
            if args.seed is not None:
                seed = args.seed
            results = validate(trials, optimize_trials, seed, args.workers,
                               loggers=[TextLogger(file=out)])
            failed = [r.name for r in results if not r.passed]
            if failed:
                logger.warning('failed checks: %s', ', '.join(failed))
            return EXIT_FAILED if failed else EXIT_OK

        loggers = [CSVLogger(out)]
        if not args.quiet:
            # keep the console free for the CSV when it goes to stdout
            loggers.append(InteractiveLogger() if args.out is not None
                           else TextLogger(file=sys.stderr))
        run = run_optimize if args.command == 'optimize' else run_sweep
        rows = run(spec, loggers, args.workers)

    failed = [row for row in rows if row.failed]
    if failed:
        logger.warning('%d of %d rows failed', len(failed), len(rows))
        return EXIT_FAILED
    return EXIT_OK


__all__ = ['build_parser', 'load_spec', 'main']
