"""
    Orlicz functions (gauges) and the numerical checks of every hypothesis
    the approximation theorems impose on them.

    An Orlicz function M is nondecreasing and convex on [0, inf),
    with M(0) = 0 and M(t) -> inf as t -> inf. Built-in families:

        * power(p):        t**p
        * exp_minus_one:   e**t - 1
        * power_log(p):    t**p * log(1 + t)
        * custom_spline:   piecewise linear through knots (t, M(t)),
                           extrapolating the last chord
        * composed:        M(t**(1/p)) for a base gauge M, built by
                           compose_power when no closed form applies

    Gauges are immutable and can be shared between threads.
"""

import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, HypothesisError, NonInvertibleGaugeError


logger = logging.getLogger(__name__)

KINDS = ('power', 'exp_minus_one', 'power_log', 'custom_spline', 'composed')
CONDITIONS = (
    'axioms', 'delta2', 'domination_3starstar', 'unit_norm_3q',
    'composed_orlicz'
)

BISECTION_MAXITER = 200
BRACKET_MAXITER = 1100
CONVEXITY_RTOL = 1e-9
DELTA2_SLACK = 1.05


@dataclass(frozen=True)
class OrliczFunction:
    """
        An evaluable convex gauge M(t), t >= 0.

        Use the class constructors (power, exp_minus_one, power_log,
        spline) rather than building instances directly.
    """

    kind: str
    p: Optional[float] = None
    knots: Optional[Tuple[Tuple[float, float], ...]] = None
    base: Optional['OrliczFunction'] = None
    label: str = ''

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError('Unknown gauge kind %r' % self.kind)

        if self.kind in ('power', 'power_log', 'composed'):
            if self.p is None or not self.p > 0 or math.isinf(self.p):
                raise DomainError(
                    'Gauge %s needs a finite exponent p > 0' % self.kind, self.p
                )

        if self.kind == 'composed' and self.base is None:
            raise DomainError('A composed gauge needs a base gauge')

        if self.kind == 'custom_spline':
            if self.knots is None or len(self.knots) < 2:
                raise DomainError('A spline gauge needs at least two knots')

            ts = [ t for t, _ in self.knots ]
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise DomainError('Spline knots must be strictly increasing in t')

        if not self.label:
            object.__setattr__(self, 'label', self._default_label())


    def _default_label(self):
        if self.kind in ('power', 'power_log'):
            return '%s(p=%g)' % (self.kind, self.p)
        elif self.kind == 'composed':
            return '%s(t^(1/%g))' % (self.base.label, self.p)
        elif self.kind == 'custom_spline':
            return 'spline(%d knots)' % len(self.knots)
        else:
            return self.kind


    # Constructors

    @classmethod
    def power(cls, p, label=''):
        return cls('power', p=float(p), label=label)

    @classmethod
    def exp_minus_one(cls, label=''):
        return cls('exp_minus_one', label=label)

    @classmethod
    def power_log(cls, p, label=''):
        return cls('power_log', p=float(p), label=label)

    @classmethod
    def spline(cls, knots, label='', validate=True):
        """
            Piecewise-linear gauge through knots [(t, M(t)), ...].
            With validate, knots must start at (0, 0), have nondecreasing
            values and nondecreasing chord slopes, and a positive last slope.
        """

        knots = tuple((float(t), float(v)) for t, v in knots)

        if validate:
            validate_knots(knots)

        return cls('custom_spline', knots=knots, label=label)


    @property
    def is_spline(self):
        return self.kind == 'custom_spline'


    def has_flat_segment(self):
        if self.kind == 'custom_spline':
            return any(
                v2 <= v1
                for (_, v1), (_, v2) in zip(self.knots, self.knots[1:])
            )
        elif self.kind == 'composed':
            return self.base.has_flat_segment()

        return False


    def __call__(self, t):
        return evaluate(self, t)


    def __str__(self):
        return self.label


def validate_knots(knots):
    """
        Raises DomainError unless knots describe a discrete convex
        Orlicz function: first knot (0, 0), t strictly increasing,
        values nondecreasing, chord slopes nondecreasing,
        last chord slope positive.
    """

    if len(knots) < 2:
        raise DomainError('A spline gauge needs at least two knots')

    if knots[0] != (0.0, 0.0):
        raise DomainError('First spline knot must be (0, 0)', knots[0])

    slopes = []
    for (t1, v1), (t2, v2) in zip(knots, knots[1:]):
        if t2 <= t1:
            raise DomainError('Spline knots must be strictly increasing in t', t2)

        if v2 < v1:
            raise DomainError('Spline values must be nondecreasing', (t2, v2))

        slopes.append((v2 - v1) / (t2 - t1))

    for (t, _), s1, s2 in zip(knots[1:], slopes, slopes[1:]):
        if s2 < s1:
            raise DomainError(
                'Spline chord slopes must be nondecreasing (convexity)', t
            )

    if slopes[-1] <= 0:
        raise DomainError('Last spline chord slope must be positive')


def evaluate(M, t):
    """
        M(t) for a scalar or an array t >= 0.
        Exact for the closed-form families; linear interpolation between
        knots (last chord extrapolated) for splines.
    """

    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)

    if np.any(t < 0) or np.any(np.isnan(t)):
        raise DomainError('Gauges are defined on t >= 0 only', M.label)

    with np.errstate(over='ignore'):
        if M.kind == 'power':
            value = t ** M.p
        elif M.kind == 'exp_minus_one':
            value = np.expm1(t)
        elif M.kind == 'power_log':
            value = t ** M.p * np.log1p(t)
        elif M.kind == 'composed':
            value = evaluate(M.base, t ** (1 / M.p))
        else:
            ts, vs = np.array(M.knots).T
            slope = (vs[-1] - vs[-2]) / (ts[-1] - ts[-2])
            value = np.where(
                t <= ts[-1],
                np.interp(t, ts, vs),
                vs[-1] + slope * (t - ts[-1])
            )

    return float(value) if scalar else value


def inverse(M, u, maxiter=BISECTION_MAXITER):
    """
        t >= 0 with M(t) = u, by a doubling (or halving) bracket
        followed by bisection down to float resolution.
        inverse(M, 0) = 0.

        Raises NonInvertibleGaugeError for splines with flat segments.
    """

    u = float(u)
    if u < 0 or math.isnan(u):
        raise DomainError('Inverse is defined for u >= 0 only', u)

    if M.has_flat_segment():
        raise NonInvertibleGaugeError(
            'non-invertible gauge: %s has a flat segment' % M.label, M
        )

    if u == 0:
        return 0.0

    if math.isinf(u):
        return math.inf

    lo, hi = _bracket(M, u)

    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)

        if mid <= lo or mid >= hi:
            break

        if evaluate(M, mid) < u:
            lo = mid
        else:
            hi = mid

    return min((lo, hi), key=lambda t: abs(evaluate(M, t) - u))


def _bracket(M, u):
    """ (lo, hi) with M(lo) <= u <= M(hi) """

    t = 1.0
    if evaluate(M, t) < u:
        for _ in range(BRACKET_MAXITER):
            if evaluate(M, 2 * t) >= u:
                return t, 2 * t
            t *= 2
    else:
        for _ in range(BRACKET_MAXITER):
            if evaluate(M, t / 2) <= u:
                return t / 2, t
            t /= 2

    raise DomainError('Could not bracket M^-1(%g) for %s' % (u, M.label))


@dataclass(frozen=True)
class ConditionReport:
    """
        Outcome of a numerical check of one hypothesis.
        witness is (t, values) at the first failure; present iff not passed.
    """

    condition_id: str
    passed: bool
    witness: Optional[tuple] = None
    samples_used: int = 0
    statistic: Optional[float] = None
    note: str = field(default='', compare=False)

    def __post_init__(self):
        if self.condition_id not in CONDITIONS:
            raise DomainError('Unknown condition %r' % self.condition_id)

        if self.passed == (self.witness is not None):
            raise DomainError('A witness is recorded iff the check fails')


    def __bool__(self):
        return self.passed


    def describe(self):
        s = '%s: %s (%d samples)' % (
            self.condition_id, 'passed' if self.passed else 'FAILED',
            self.samples_used
        )

        if self.statistic is not None:
            s += ', statistic=%.17g' % self.statistic

        if self.witness is not None:
            s += ', witness t=%r values=%r' % self.witness

        if self.note:
            s += ' [%s]' % self.note

        return s


def check_axioms(M, grid):
    """
        Checks M(0) = 0, monotonicity and chord-slope monotonicity
        (convexity) of M on the sorted grid, and growth M(max grid) > 1.
        Failures are reported, never raised.
    """

    grid = np.asarray(grid, dtype=float)
    if grid.size == 0 or np.any(np.diff(grid) < 0) or grid[0] < 0:
        raise DomainError('Axiom grid must be nonempty, sorted and nonnegative')

    m0 = evaluate(M, 0.0)
    if m0 != 0:
        return _failed('axioms', 0.0, (m0,), grid.size, 'M(0) != 0')

    # Chords are taken from the origin too, so M(t)/t is checked as well
    ts = np.unique(np.concatenate([[0.0], grid]))
    vs = evaluate(M, ts)

    drops = np.nonzero(np.diff(vs) < 0)[0]
    if drops.size:
        i = drops[0] + 1
        return _failed(
            'axioms', float(ts[i]), (float(vs[i - 1]), float(vs[i])),
            grid.size, 'M decreases'
        )

    slopes = np.diff(vs) / np.diff(ts)
    tol = CONVEXITY_RTOL * np.maximum(1.0, np.abs(slopes[:-1]))
    bends = np.nonzero(slopes[1:] < slopes[:-1] - tol)[0]
    if bends.size:
        i = bends[0] + 1
        return _failed(
            'axioms', float(ts[i]), (float(slopes[i - 1]), float(slopes[i])),
            grid.size, 'chord slopes decrease (not convex)'
        )

    if not vs[-1] > 1:
        return _failed(
            'axioms', float(ts[-1]), (float(vs[-1]),), grid.size,
            'M does not exceed 1 on the grid'
        )

    return ConditionReport('axioms', True, samples_used=int(grid.size))


def _failed(condition_id, t, values, samples, note=''):
    report = ConditionReport(
        condition_id, False, witness=(t, values),
        samples_used=int(samples), note=note
    )

    logger.debug('%s', report.describe())
    return report


def default_grid(M, points=2001):
    """
        Grid on which check_axioms is run by default: linear up to ten times
        the unit point M^-1(1), refined geometrically near 0.
    """

    if M.kind == 'custom_spline':
        t_max = 2 * M.knots[-1][0]
    elif M.kind == 'composed' and M.base.kind == 'custom_spline':
        t_max = (2 * M.base.knots[-1][0]) ** M.p
    else:
        t_max = 10 * inverse(M, 1.0)

    t_max = max(t_max, 10.0)

    return np.unique(np.concatenate([
        np.linspace(0, t_max, points),
        np.geomspace(1e-6, t_max, points // 5)
    ]))


def delta2_ratios(M, grid):
    """ (t, M(2t)/M(t)) over grid points with M(t) > 0 """

    grid = np.asarray(grid, dtype=float)
    if grid.size == 0 or np.any(grid <= 0):
        raise DomainError('Delta2 grid must be positive')

    grid = np.sort(grid)

    with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
        num = evaluate(M, 2 * grid)
        den = evaluate(M, grid)
        ratios = np.where(den > 0, num / den, np.where(num > 0, np.inf, np.nan))

    keep = ~np.isnan(ratios)
    return grid[keep], ratios[keep]


def delta2_constant(M, grid):
    """ Sampled sup of M(2t)/M(t) over grid """

    _, ratios = delta2_ratios(M, grid)
    return float(np.max(ratios)) if ratios.size else math.nan


def check_delta2(M, grid):
    """
        Advisory Delta2 check. Computes M(2t)/M(t) on the grid and passes
        iff every ratio is finite and the ratios over the top decade of
        the grid (t >= max/10) do not exceed 1.05 times the largest ratio
        below it. The decision is a heuristic: Delta2 is asymptotic.
    """

    ts, ratios = delta2_ratios(M, grid)
    samples = int(np.size(grid))

    if ratios.size == 0:
        return _failed('delta2', float(np.max(grid)), (), samples, 'M vanishes on grid')

    statistic = float(np.max(ratios))

    if not np.all(np.isfinite(ratios)):
        i = int(np.nonzero(~np.isfinite(ratios))[0][0])
        return _failed('delta2', float(ts[i]), (float(ratios[i]),), samples, 'ratio overflows')

    top = ts >= ts[-1] / 10
    if top.all():
        # Grid within one decade: compare against its lower half instead
        top = np.arange(ts.size) >= ts.size // 2

    rest = ratios[~top]
    if rest.size == 0:
        return ConditionReport(
            'delta2', True, samples_used=samples, statistic=statistic,
            note='single grid point'
        )

    top_max, rest_max = float(np.max(ratios[top])), float(np.max(rest))

    if top_max > DELTA2_SLACK * rest_max:
        i = int(np.argmax(np.where(top, ratios, -np.inf)))
        report = ConditionReport(
            'delta2', False, witness=(float(ts[i]), (top_max, rest_max)),
            samples_used=samples, statistic=statistic,
            note='ratio grows over the top decade'
        )
    else:
        report = ConditionReport(
            'delta2', True, samples_used=samples, statistic=statistic,
            note='grid [%g, %g]' % (ts[0], ts[-1])
        )

    return report


def check_domination(N, M, samples):
    """
        Condition 0 < N(t) <= M(t) on a uniform grid of `samples` points
        over (0, 1].
    """

    if samples < 2:
        raise DomainError('Domination check needs at least 2 samples', samples)

    ts = np.linspace(0, 1, samples + 1)[1:]
    ns, ms = evaluate(N, ts), evaluate(M, ts)

    bad = np.nonzero((ns <= 0) | (ns > ms * (1 + 1e-12)))[0]
    if bad.size:
        i = bad[0]
        return _failed(
            'domination_3starstar', float(ts[i]), (float(ns[i]), float(ms[i])),
            samples, '%s vs %s' % (N.label, M.label)
        )

    return ConditionReport('domination_3starstar', True, samples_used=int(samples))


def unit_vector_norm(M):
    """ ||e_i||_{l_M} = inf{a > 0: M(1/a) <= 1} = 1 / M^-1(1) """

    return 1.0 / inverse(M, 1.0)


def check_unit_norm(M, N, tol=1e-9):
    """ Condition ||e_i||_{l_M} = ||e_i||_{l_N} within tol """

    a, b = unit_vector_norm(M), unit_vector_norm(N)

    if abs(a - b) > tol * max(1.0, a, b):
        return _failed('unit_norm_3q', 1.0, (a, b), 2, '%s vs %s' % (M.label, N.label))

    return ConditionReport('unit_norm_3q', True, samples_used=2, statistic=abs(a - b))


def compose_power(M, p, grid=None):
    """
        The gauge t -> M(t**(1/p)).

        Powers fold into another power; other gauges become a composed
        gauge. The composition must pass check_axioms, otherwise the
        Theorem 3 hypothesis (M(t^(1/p)) is an Orlicz function) is
        violated and HypothesisError is raised.
    """

    p = float(p)
    if not p > 0:
        raise DomainError('compose_power needs p > 0', p)

    if grid is None:
        return _checked_composition(M, p)

    return _compose(M, p, grid)


def _compose(M, p, grid):
    if p == 1:
        composed = M
    elif M.kind == 'power':
        composed = OrliczFunction.power(M.p / p)
    elif M.kind == 'composed':
        composed = OrliczFunction('composed', p=M.p * p, base=M.base)
    else:
        composed = OrliczFunction('composed', p=p, base=M)

    report = check_axioms(composed, default_grid(composed) if grid is None else grid)
    if not report.passed:
        report = ConditionReport(
            'composed_orlicz', False, witness=report.witness,
            samples_used=report.samples_used, note=report.note
        )

        raise HypothesisError(
            'Theorem 3 hypothesis violated: %s is not an Orlicz function'
            % composed.label, M, p, report=report
        )

    return composed


@functools.lru_cache(maxsize=256)
def _checked_composition(M, p):
    return _compose(M, p, None)
