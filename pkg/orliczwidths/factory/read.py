"""
    Readers of the input files of the command line.

        * values:   one real number per line (sequences x, weights lambda)
        * splines:  one `t,value` knot per line, the first being `0,0`

    Lines starting with # are ignored.
"""

import os

import pandas as pd

from ..charseq import WeightSequence
from ..errors import DomainError, SpecParseError, TruncationError
from ..orlicz import OrliczFunction


def read_csv(filename, columns):
    """
        Reads a headerless csv into a DataFrame with the given columns.
        Every cell must hold a real number.
    """

    try:
        frame = pd.read_csv(
            filename, header=None, comment='#', skip_blank_lines=True
        )
    except pd.errors.EmptyDataError as e:
        raise SpecParseError('%s holds no values' % filename, filename) from e
    except (OSError, pd.errors.ParserError) as e:
        raise SpecParseError('Could not read %s: %s' % (filename, e), filename) from e

    if frame.shape[1] != len(columns):
        raise SpecParseError(
            '%s: expected %d column(s) per line, found %d'
            % (filename, len(columns), frame.shape[1]), filename
        )

    frame.columns = list(columns)

    try:
        frame = frame.apply(pd.to_numeric).astype(float)
    except (ValueError, TypeError) as e:
        raise SpecParseError('%s holds non-numeric values' % filename, filename) from e

    if frame.isna().any().any():
        raise SpecParseError('%s has missing values' % filename, filename)

    return frame


def read_values(filename):
    """ The sequence stored in filename, one value per line """

    return tuple(read_csv(filename, ['value'])['value'])


def read_weights(filename, tail_bound=0.0, d=None):
    """
        Weights lambda_1.. from filename (one positive real per line).

        If d is given and the file holds more weights, only the first d
        are kept and the tail bound is raised to cover the dropped ones.
    """

    values = read_values(filename)

    if not all(v > 0 for v in values):
        raise SpecParseError('%s: weights must be positive' % filename, filename)

    if d is not None and d < len(values):
        values, dropped = values[:d], values[d:]
        tail_bound = max(tail_bound, max(dropped))

        if tail_bound > min(values):
            raise TruncationError(
                'truncating %s at d = %d drops a weight larger than a kept one; '
                'increase d or sort the weights' % (filename, d), d
            )

    try:
        return WeightSequence(values, tail_bound, 'csv')
    except DomainError as e:
        raise SpecParseError('%s: %s' % (filename, e.message), filename) from e


def read_spline(filename, label=''):
    """ Spline gauge through the knots stored in filename """

    frame = read_csv(filename, ['t', 'value'])
    knots = tuple(zip(frame['t'], frame['value']))

    if knots[0] != (0.0, 0.0):
        raise SpecParseError('%s: the first knot must be 0,0' % filename, filename)

    try:
        return OrliczFunction.spline(
            knots, label or 'spline[%s]' % os.path.basename(filename)
        )
    except DomainError as e:
        raise SpecParseError('%s: %s' % (filename, e.message), filename) from e
