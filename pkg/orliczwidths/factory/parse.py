"""
    Spec strings of the command line, `family[:key=value,...]`:

        --orlicz   power:p=2 | exp_minus_one | power_log:p=1 | spline:<path>
        --weights  power-decay:beta=1 | geometric:q=0.5 | csv:<path>
                   | csv:path=<path>,tail=<bound>

    and order ranges `a..b` (inclusive), `a` or `a,b,c`.
"""

from ..charseq import WeightSequence
from ..errors import DomainError, SpecParseError
from ..orlicz import OrliczFunction
from .read import read_spline, read_weights


GAUGE_FAMILIES = ('power', 'exp_minus_one', 'power_log', 'spline')
WEIGHT_FAMILIES = ('power-decay', 'geometric', 'csv')


def _key_values(spec, params, allowed, required=()):
    values = {}

    for item in filter(None, (s.strip() for s in params.split(','))):
        key, sep, value = item.partition('=')
        key = key.strip()

        if not sep or key not in allowed or key in values:
            raise SpecParseError(
                'Bad parameter %r in %r (expected %s)'
                % (item, spec, ', '.join('%s=<value>' % k for k in allowed) or 'none')
            )

        values[key] = value.strip()

    for key in required:
        if key not in values:
            raise SpecParseError('%r needs %s=<value>' % (spec, key))

    return values


def _number(spec, key, value):
    try:
        return float(value)
    except ValueError:
        raise SpecParseError('%s must be a number in %r' % (key, spec)) from None


def _path_params(spec, params, extra=()):
    """ Either a bare path or path=<path>[,key=value...] """

    if not params.startswith('path='):
        if not params:
            raise SpecParseError('%r needs a file path' % spec)

        return { 'path': params }

    return _key_values(spec, params, ('path',) + extra, required=('path',))


def parse_orlicz(spec):
    """ OrliczFunction described by spec """

    family, _, params = spec.strip().partition(':')

    try:
        if family in ('power', 'power_log'):
            kv = _key_values(spec, params, ('p',), required=('p',))
            constructor = getattr(OrliczFunction, family)
            return constructor(_number(spec, 'p', kv['p']))

        elif family == 'exp_minus_one':
            _key_values(spec, params, ())
            return OrliczFunction.exp_minus_one()

        elif family == 'spline':
            return read_spline(_path_params(spec, params)['path'])

    except DomainError as e:
        raise SpecParseError('Invalid gauge %r: %s' % (spec, e.message)) from e

    raise SpecParseError(
        'Unknown gauge family %r (expected one of %s)'
        % (family, ', '.join(GAUGE_FAMILIES))
    )


def parse_weights(spec, d):
    """ WeightSequence of dimension d (at most d for csv) described by spec """

    family, _, params = spec.strip().partition(':')

    if d < 1:
        raise SpecParseError('The truncation d must be at least 1', d)

    try:
        if family == 'power-decay':
            kv = _key_values(spec, params, ('beta',), required=('beta',))
            return WeightSequence.power_decay(_number(spec, 'beta', kv['beta']), d)

        elif family == 'geometric':
            kv = _key_values(spec, params, ('q',), required=('q',))
            return WeightSequence.geometric(_number(spec, 'q', kv['q']), d)

        elif family == 'csv':
            kv = _path_params(spec, params, extra=('tail',))
            tail = _number(spec, 'tail', kv.get('tail', '0'))
            return read_weights(kv['path'], tail, d)

    except DomainError as e:
        raise SpecParseError('Invalid weights %r: %s' % (spec, e.message)) from e

    raise SpecParseError(
        'Unknown weight family %r (expected one of %s)'
        % (family, ', '.join(WEIGHT_FAMILIES))
    )


def parse_range(spec):
    """ Tuple of nonnegative orders from `a..b`, `a` or `a,b,c` """

    spec = spec.strip()

    try:
        if '..' in spec:
            start, _, stop = spec.partition('..')
            start, stop = int(start), int(stop)

            if stop < start:
                raise SpecParseError('Empty range %r' % spec)

            orders = tuple(range(start, stop + 1))
        else:
            orders = tuple(int(s) for s in spec.split(','))

    except ValueError:
        raise SpecParseError('Bad range %r (expected a..b, a or a,b,c)' % spec) from None

    if any(k < 0 for k in orders):
        raise SpecParseError('Orders are nonnegative in %r' % spec)

    return orders
