"""
    Luxemburg norm of finite sequences in an Orlicz sequence space l_M:

        ||x||_{l_M} = inf{ a > 0 : sum_k M(|x_k| / a) <= 1 }

    Infinite sequences are handled at a finite truncation d chosen by the
    caller; entries beyond d are zero. Indices are 1-based in the public
    API, as in the theory (e_1, e_2, ...).
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DomainError, NonInvertibleGaugeError, OracleScaleError
from .orlicz import evaluate, unit_vector_norm


logger = logging.getLogger(__name__)

NORM_MAXITER = 200
NORM_RTOL = 4 * np.finfo(float).eps
ORACLE_MAX_SET = 3
ORACLE_MAX_DIM = 8
ORACLE_REFINEMENTS = 3
ORACLE_MAX_SWEEPS = 50


@dataclass(frozen=True)
class FiniteSequence:
    """ Element x of l_M truncated at dimension d = len(entries) """

    entries: Tuple[float, ...]

    def __post_init__(self):
        entries = tuple(float(v) for v in self.entries)

        if not entries:
            raise DomainError('A sequence needs dimension d >= 1')

        if not all(map(math.isfinite, entries)):
            raise DomainError('Sequence entries must be finite', entries)

        object.__setattr__(self, 'entries', entries)


    @classmethod
    def of(cls, values):
        return cls(tuple(np.ravel(values)))


    @classmethod
    def basis(cls, i, d, scale=1.0):
        """ scale * e_i in dimension d """

        if not 1 <= i <= d:
            raise DomainError('Basis index out of range', i, d)

        entries = [0.0] * d
        entries[i - 1] = float(scale)
        return cls(tuple(entries))


    @property
    def d(self):
        return len(self.entries)


    def as_array(self):
        return np.array(self.entries)


    def support(self):
        return IndexSet(tuple(k + 1 for k, v in enumerate(self.entries) if v != 0))


    def __getitem__(self, k):
        """ x_k, 1-based; zero beyond d """

        if k < 1:
            raise IndexError(k)

        return self.entries[k - 1] if k <= self.d else 0.0


    def __len__(self):
        return self.d


    def __mul__(self, c):
        return FiniteSequence(tuple(c * v for v in self.entries))

    __rmul__ = __mul__


    def __add__(self, other):
        d = max(self.d, other.d)
        return FiniteSequence(tuple(self[k] + other[k] for k in range(1, d + 1)))


@dataclass(frozen=True)
class IndexSet:
    """ Sorted set of distinct positive indices (gamma_n) """

    indices: Tuple[int, ...] = ()

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)

        if len(set(indices)) != len(indices):
            raise DomainError('Index sets hold distinct indices', indices)

        if any(i < 1 for i in indices):
            raise DomainError('Indices are positive integers', indices)

        object.__setattr__(self, 'indices', tuple(sorted(indices)))


    @classmethod
    def of(cls, indices, d=None):
        gamma = cls(tuple(indices))

        if d is not None and gamma.indices and gamma.indices[-1] > d:
            raise DomainError('Index %d beyond dimension %d' % (gamma.indices[-1], d))

        return gamma


    def mask(self, d):
        """ Boolean array of length d, True at members """

        mask = np.zeros(d, dtype=bool)
        inside = [ i - 1 for i in self.indices if i <= d ]
        mask[inside] = True
        return mask


    def complement(self, d):
        return IndexSet(tuple(k for k in range(1, d + 1) if k not in self))


    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, k):
        return k in self.indices

    def __str__(self):
        return '{%s}' % ','.join(map(str, self.indices))


def _abs_entries(x):
    if isinstance(x, FiniteSequence):
        return np.abs(x.as_array())

    return np.abs(np.asarray(x, dtype=float))


def modular(M, x, alpha):
    """ sum_k M(|x_k| / alpha) """

    alpha = float(alpha)
    if not alpha > 0:
        raise DomainError('The modular needs alpha > 0', alpha)

    with np.errstate(over='ignore'):
        return math.fsum(evaluate(M, _abs_entries(x) / alpha))


def luxemburg_norm(M, x):
    """
        inf{a > 0 : modular(M, x, a) <= 1}, by bisection on a
        (the modular is nonincreasing in a). The returned a always
        satisfies modular(M, x, a) <= 1. The zero sequence has norm 0.
    """

    a = _abs_entries(x)
    a = a[a > 0]

    if a.size == 0:
        return 0.0

    lo, hi = _norm_bracket(M, a)

    for _ in range(NORM_MAXITER):
        if hi - lo <= NORM_RTOL * hi:
            break

        mid = 0.5 * (lo + hi)
        if modular(M, a, mid) <= 1:
            hi = mid
        else:
            lo = mid

    return hi


def _norm_bracket(M, a):
    """
        (lo, hi) with modular(lo) > 1 >= modular(hi).
        One term alone must fit, so the norm is at least max|x_k| * ||e||;
        the triangle inequality gives sum|x_k| * ||e|| as upper bound.
    """

    try:
        unit = unit_vector_norm(M)
        lo, hi = float(a.max()) * unit, math.fsum(a) * unit
    except NonInvertibleGaugeError:
        lo = hi = float(a.max())

    # Both bounds may be off by rounding (or unavailable for flat gauges)
    for _ in range(NORM_MAXITER):
        if modular(M, a, hi) <= 1:
            break
        lo, hi = hi, 2 * hi

    for _ in range(NORM_MAXITER):
        if lo == 0 or modular(M, a, lo) > 1:
            break
        hi, lo = lo, lo / 2

    return lo, hi


def _row_modulars(M, a, alpha):
    # alpha = 0 only marks rows already bracketed; any positive value will do
    alpha = np.where(alpha > 0, alpha, 1.0)

    with np.errstate(over='ignore'):
        return np.sum(evaluate(M, a / alpha[:, None]), axis=1)


def luxemburg_norms(M, rows):
    """
        luxemburg_norm of every row of a 2-d array, bisecting all the
        rows together (same bracket and stopping rule). Zero rows get 0.
    """

    a = np.abs(np.asarray(rows, dtype=float))

    if a.ndim != 2:
        raise DomainError('luxemburg_norms needs a 2-d array', a.shape)

    norms = np.zeros(a.shape[0])

    live = a.max(axis=1, initial=0.0) > 0
    a = a[live]

    if not a.size:
        return norms

    try:
        unit = unit_vector_norm(M)
        lo, hi = a.max(axis=1) * unit, a.sum(axis=1) * unit
    except NonInvertibleGaugeError:
        lo = a.max(axis=1)
        hi = lo.copy()

    for _ in range(NORM_MAXITER):
        low = _row_modulars(M, a, hi) > 1
        if not low.any():
            break
        lo, hi = np.where(low, hi, lo), np.where(low, 2 * hi, hi)

    for _ in range(NORM_MAXITER):
        high = (lo > 0) & (_row_modulars(M, a, lo) <= 1)
        if not high.any():
            break
        hi, lo = np.where(high, lo, hi), np.where(high, lo / 2, lo)

    for _ in range(NORM_MAXITER):
        open_ = hi - lo > NORM_RTOL * hi
        if not open_.any():
            break

        mid = 0.5 * (lo + hi)
        fits = _row_modulars(M, a, mid) <= 1

        hi = np.where(open_ & fits, mid, hi)
        lo = np.where(open_ & ~fits, mid, lo)

    norms[live] = hi
    return norms


def lp_norm(x, p):
    """ (sum |x_k|^p)^(1/p), the closed form for M(t) = t^p """

    a = _abs_entries(x)
    return math.fsum(a ** p) ** (1 / p)


def tail_norm(M, x, gamma):
    """
        ||x - S_gamma(x)||_{l_M}: the norm of x with the entries in gamma
        zeroed. It is the error of the best approximation of x by
        polynomials with indices in gamma.
    """

    a = _abs_entries(x)
    a = np.where(gamma.mask(a.size), 0.0, a)
    return luxemburg_norm(M, a)


def partial_sum_tail(M, x, k):
    """ ||x - (x_1, ..., x_k, 0, ...)||_{l_M} """

    return tail_norm(M, x, IndexSet(tuple(range(1, k + 1))))


def basis_convergence(M, x):
    """
        Norms of the remainders of the partial sums of x over e_1, e_2, ...
        for k = 0..d. Nonincreasing, ending at 0: the partial sums converge.
    """

    return [ partial_sum_tail(M, x, k) for k in range(len(_abs_entries(x)) + 1) ]


def best_coeff_error_oracle(M, x, gamma, grid_steps=41):
    """
        Brute-force min over coefficients a_i (i in gamma) of
        ||x - sum a_i e_i||_{l_M}, by coordinate descent on a grid that is
        refined three times around the best point. Oracle scale only:
        |gamma| <= 3 and d <= 8.
    """

    values = np.asarray(
        x.entries if isinstance(x, FiniteSequence) else x, dtype=float
    )

    if len(gamma) > ORACLE_MAX_SET or values.size > ORACLE_MAX_DIM:
        raise OracleScaleError(
            'oracle scale exceeded: |gamma| <= %d and d <= %d'
            % (ORACLE_MAX_SET, ORACLE_MAX_DIM), len(gamma), values.size
        )

    if grid_steps < 3:
        raise DomainError('The coefficient grid needs at least 3 steps', grid_steps)

    positions = [ i - 1 for i in gamma if i <= values.size ]
    if not positions:
        return luxemburg_norm(M, values)

    coeffs = np.zeros(len(positions))
    error = lambda c: luxemburg_norm(M, _subtract(values, positions, c))

    best = error(coeffs)
    width = float(np.max(np.abs(values))) or 1.0

    for _ in range(ORACLE_REFINEMENTS + 1):
        improved, sweeps = True, 0

        while improved and sweeps < ORACLE_MAX_SWEEPS:
            improved, sweeps = False, sweeps + 1

            for j in range(len(positions)):
                for candidate in coeffs[j] + np.linspace(-width, width, grid_steps):
                    trial = coeffs.copy()
                    trial[j] = candidate

                    e = error(trial)
                    if e < best:
                        best, coeffs, improved = e, trial, True

        width *= 2 / (grid_steps - 1)

    logger.debug('coefficient oracle: %r -> %.17g', coeffs, best)
    return best


def _subtract(values, positions, coeffs):
    residual = values.copy()
    residual[positions] -= coeffs
    return residual


def random_sphere_point(M, d, rng):
    """
        Random element of the unit sphere of l_M^d: random signs and
        magnitudes (some entries set to zero), normalized by the norm.
    """

    x = rng.standard_normal(d) * rng.exponential(size=d)
    x[rng.random(d) < 0.2] = 0.0

    if not np.any(x):
        x[rng.integers(d)] = 1.0

    return x / luxemburg_norm(M, x)


def exhaustive_subsets(d, n):
    """ All n-element IndexSets of {1..d}, in lexicographic order """

    return (IndexSet(c) for c in itertools.combinations(range(1, d + 1), n))
