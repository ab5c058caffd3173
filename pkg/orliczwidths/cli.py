"""
    Command line interface.

        orliczwidths norm    --orlicz SPEC (--x 3,4 | --input PATH) [--gamma 1,3]
        orliczwidths charseq --weights SPEC [--d D]
        orliczwidths widths  --weights SPEC --orlicz SPEC [--target-orlicz SPEC]
                             [--n-range a..b] [--m-range a..b] [--d D]
        orliczwidths sigma   --weights SPEC --orlicz SPEC --p P (--n N | --n-range a..b)
                             [--d D] [--search MODE]
        orliczwidths table   (widths and sigma options) [--quantities D_n,d_m,...]
        orliczwidths verify  [--seed S] [--trials T] [--report PATH]

    Results are written as CSV (17 significant digits) to stdout or --output.
    Exit status: 0 on success, 1 if a verification suite fails, 2 on usage
    errors and 3 when a theorem hypothesis or the truncation fails.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Optional, Tuple

import pandas as pd

from . import __version__
from .charseq import characteristic
from .errors import (
    DomainError, OrliczError, SpecParseError,
)
from .factory import parse_orlicz, parse_range, parse_weights, read_values
from .luxemburg import IndexSet, luxemburg_norm, tail_norm
from .nterm import SEARCH_MODES, SearchPolicy
from .suites import TABLE_QUANTITIES, row, table_graph, table_rows, verify_graph


logger = logging.getLogger(__name__)

COMMANDS = ('norm', 'charseq', 'widths', 'sigma', 'verify', 'table')
COLUMNS = ('quantity', 'order', 'value', 'certified', 'witness')
VERIFY_COLUMNS = ('suite', 'passed', 'checked', 'failures')

DEFAULT_D = 64
DEFAULT_TRIALS = 10000
LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    """ Everything a command needs; built from the parsed arguments """

    command: str
    orlicz_spec: Optional[str] = None
    target_orlicz_spec: Optional[str] = None
    weight_spec: Optional[str] = None
    p: Optional[float] = None
    n_range: Tuple[int, ...] = ()
    m_range: Tuple[int, ...] = ()
    d: int = DEFAULT_D
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    output: Optional[str] = None
    report: Optional[str] = None
    search: Optional[str] = None
    quantities: Tuple[str, ...] = ()
    x: Tuple[float, ...] = ()
    input: Optional[str] = None
    gamma: Tuple[int, ...] = ()
    log_level: str = 'WARNING'

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise SpecParseError('Unknown command %r' % self.command)

        if self.d < 1:
            raise SpecParseError('--d must be at least 1', self.d)

        if self.trials < 1:
            raise SpecParseError('--trials must be at least 1', self.trials)

        if self.p is not None and not self.p > 0:
            raise SpecParseError('--p must be positive', self.p)

        unknown = set(self.quantities) - set(TABLE_QUANTITIES)
        if unknown:
            raise SpecParseError('Unknown quantities %s' % ', '.join(sorted(unknown)))


    @classmethod
    def from_args(cls, args):
        n_range = parse_range(args.n_range) if args.n_range else ()

        if args.n is not None:
            n_range = (args.n,)

        return cls(
            command=args.command,
            orlicz_spec=args.orlicz,
            target_orlicz_spec=args.target_orlicz,
            weight_spec=args.weights,
            p=args.p,
            n_range=n_range,
            m_range=parse_range(args.m_range) if args.m_range else (),
            d=args.d,
            seed=args.seed,
            trials=args.trials,
            output=args.output,
            report=args.report,
            search=args.search,
            quantities=tuple(
                q.strip() for q in args.quantities.split(',') if q.strip()
            ) if args.quantities else (),
            x=tuple(_floats(args.x)) if args.x else (),
            input=args.input,
            gamma=parse_range(args.gamma) if args.gamma else (),
            log_level=args.log_level,
        )


def _floats(text):
    try:
        return [ float(s) for s in text.split(',') ]
    except ValueError:
        raise SpecParseError('--x needs comma-separated numbers, got %r' % text) from None


FLAGS = {
    'orlicz_spec': '--orlicz',
    'weight_spec': '--weights',
    'p': '--p',
    'n_range': '--n or --n-range',
}


def _require(config, *names):
    for name in names:
        if getattr(config, name) in (None, ()):
            raise SpecParseError('%s needs %s' % (config.command, FLAGS[name]))


# Commands; each returns (rows, columns, exit status)

def run_norm(config):
    _require(config, 'orlicz_spec')
    M = parse_orlicz(config.orlicz_spec)

    if config.x and config.input:
        raise SpecParseError('norm takes either --x or --input, not both')

    x = config.x or (read_values(config.input) if config.input else ())
    if not x:
        raise SpecParseError('norm needs --x or --input')

    rows = [ row('norm', 0, luxemburg_norm(M, x), True) ]

    if config.gamma:
        gamma = IndexSet.of(config.gamma, len(x))
        rows.append(row(
            'tail_norm', len(gamma), tail_norm(M, x, gamma), True, 'gamma=%s' % gamma
        ))

    return rows, COLUMNS, EXIT_OK


def run_charseq(config):
    _require(config, 'weight_spec')
    lam = parse_weights(config.weight_spec, config.d)
    triple = characteristic(lam)

    rows = [
        row(
            'epsilon', n, triple.eps(n), triple.eps(n) > lam.tail_bound,
            'delta=%d;g=%s' % (triple.delta_at(n), triple.g(n))
        )
        for n in range(1, triple.r + 1)
    ]

    return rows, COLUMNS, EXIT_OK


def _search(config, lam):
    mode = config.search

    if mode is None:
        mode = 'heuristic' if lam.family in ('csv', 'custom') else 'certified_family'

    return SearchPolicy(mode=mode)


def _table(config, quantities):
    _require(config, 'weight_spec', 'orlicz_spec')

    if 'sigma' in quantities:
        _require(config, 'p')

    lam = parse_weights(config.weight_spec, config.d)
    source = parse_orlicz(config.orlicz_spec)
    target = parse_orlicz(config.target_orlicz_spec) if config.target_orlicz_spec else None

    root = table_graph(
        quantities, lam, source, target, config.p,
        n_range=config.n_range, m_range=config.m_range,
        search=_search(config, lam),
    )

    return table_rows(root), COLUMNS, EXIT_OK


def run_widths(config):
    quantities = ()

    if config.m_range:
        quantities += ('d_m',)

    if config.n_range:
        quantities += ('D_n', 'E_char_set')

    if not quantities:
        raise SpecParseError('widths needs --m-range and/or --n-range')

    return _table(config, quantities)


def run_sigma(config):
    _require(config, 'n_range')
    return _table(config, ('sigma',))


def run_table(config):
    quantities = config.quantities

    # By default sigma rows are added only when --p is given
    if not quantities:
        quantities = tuple(
            q for q in TABLE_QUANTITIES if q != 'sigma' or config.p is not None
        )

    return _table(config, quantities)


def run_verify(config):
    root = verify_graph(config.seed, config.trials)
    results = root.run(filename=config.report)

    rows = [
        dict(suite=name, passed=result['passed'], checked=result['checked'],
             failures=result['failures'])
        for name, result in sorted(results.items())
    ]

    failed = [ r['suite'] for r in rows if not r['passed'] ]
    for name in failed:
        logger.warning('suite %s failed', name)

    return rows, VERIFY_COLUMNS, EXIT_FAILED if failed else EXIT_OK


RUNNERS = {
    'norm': run_norm,
    'charseq': run_charseq,
    'widths': run_widths,
    'sigma': run_sigma,
    'verify': run_verify,
    'table': run_table,
}


def write_csv(rows, columns, output=None):
    """ rows as CSV; floats with 17 significant digits, booleans as true/false """

    frame = pd.DataFrame(list(rows), columns=list(columns))

    for column in frame.columns:
        if frame[column].dtype == bool:
            frame[column] = frame[column].map({ True: 'true', False: 'false' })

    frame.to_csv(
        output if output else sys.stdout,
        index=False, float_format='%.17g', lineterminator='\n'
    )


def run(config):
    """ Runs the configured command and returns the exit status """

    try:
        rows, columns, status = RUNNERS[config.command](config)

    except (SpecParseError, DomainError) as e:
        print('orliczwidths: error: %s' % e, file=sys.stderr)
        return EXIT_USAGE

    except OrliczError as e:
        # HypothesisError carries its ConditionReport in str(e)
        print('orliczwidths: %s: %s' % (type(e).__name__, e), file=sys.stderr)
        return EXIT_HYPOTHESIS

    write_csv(rows, columns, config.output)
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog='orliczwidths',
        description='Exact widths and best n-term approximations of diagonal '
                    'operators between Orlicz sequence spaces.'
    )

    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('command', choices=COMMANDS)

    parser.add_argument('--orlicz', help='gauge M, e.g. power:p=2, exp_minus_one, power_log:p=1, spline:<path>')
    parser.add_argument('--target-orlicz', help='gauge N of the target space (widths; default: --orlicz)')
    parser.add_argument('--weights', help='power-decay:beta=<b>, geometric:q=<q> or csv:<path>')
    parser.add_argument('--p', type=float, help='exponent of the source space l_p (sigma)')
    parser.add_argument('--n', type=int, help='single order n')
    parser.add_argument('--n-range', help='orders n: a..b, a or a,b,c')
    parser.add_argument('--m-range', help='Kolmogorov orders m: a..b, a or a,b,c')
    parser.add_argument('--d', type=int, default=DEFAULT_D, help='truncation dimension (default %(default)s)')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--trials', type=int, default=DEFAULT_TRIALS, help='trials per inequality suite (verify)')
    parser.add_argument('--output', help='CSV destination (default: stdout)')
    parser.add_argument('--report', help='JSON report of the verify suites')
    parser.add_argument('--search', choices=SEARCH_MODES, help='sigma stopping rule (default by weight family)')
    parser.add_argument('--quantities', help='table quantities, comma separated: %s' % ','.join(TABLE_QUANTITIES))
    parser.add_argument('--x', help='sequence for norm, comma separated')
    parser.add_argument('--input', help='sequence for norm, CSV with one value per line')
    parser.add_argument('--gamma', help='index set for norm (tail norm outside it)')
    parser.add_argument(
        '--log-level', default='WARNING',
        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'),
    )

    return parser


def main(argv=None):
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    # One handler per invocation, on the package logger; no timestamps,
    # so identical runs produce identical logs
    package_logger = logging.getLogger('orliczwidths')
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))

    level = package_logger.level
    package_logger.addHandler(handler)
    package_logger.setLevel(args.log_level)

    try:
        try:
            config = RunConfig.from_args(args)
        except SpecParseError as e:
            print('orliczwidths: error: %s' % e, file=sys.stderr)
            return EXIT_USAGE

        return run(config)

    finally:
        package_logger.removeHandler(handler)
        package_logger.setLevel(level)


if __name__ == '__main__':
    sys.exit(main())
