"""
    Exact approximation quantities of a diagonal operator
    T: x -> (lambda_k x_k) from l_M to l_N.

        E_gamma(T)    = max_{k not in gamma} lambda_k
        D_n(T)        = rearranged lambda_{n+1}
        E_{g_{n-1}}(T) = epsilon_n
        d_m(T: l_M -> l_M) = epsilon_n   for delta_{n-1} <= m < delta_n

    The first three need 0 < N(t) <= M(t) on (0, 1] and equal unit-vector
    norms in l_M and l_N; both are checked numerically when the operator is
    built. Every value is certified against the truncation: it must exceed
    the declared tail bound of the weights, otherwise a TruncationError is
    raised rather than returning a value the tail could change.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from .charseq import (
    WeightSequence, characteristic, rearrange_nonincreasing, rearrangement_order,
)
from .errors import DomainError, HypothesisError, OracleScaleError, TruncationError
from .luxemburg import (
    FiniteSequence, IndexSet, exhaustive_subsets, luxemburg_norm, luxemburg_norms,
    random_sphere_point, tail_norm,
)
from .orlicz import (
    OrliczFunction, check_domination, check_unit_norm, evaluate, unit_vector_norm,
)


logger = logging.getLogger(__name__)

QUANTITIES = ('E_gamma', 'D_n', 'E_char_set', 'd_m')
DOMINATION_SAMPLES = 1000
CONTAINMENT_SLACK = 1e-9
SUP_ORACLE_MAX_DIM = 32


@dataclass(frozen=True)
class DiagonalOperator:
    """
        T: l_M -> l_N with weights lambda.

        The domination and unit-norm conditions are checked at construction
        and kept in `reports`. With strict (the default) a failed check
        refuses the operator; otherwise the failure is raised by the
        operations that depend on it.
    """

    lam: WeightSequence
    source: OrliczFunction
    target: OrliczFunction
    strict: bool = True
    reports: Tuple = field(init=False, compare=False)

    def __post_init__(self):
        reports = (
            check_domination(self.target, self.source, DOMINATION_SAMPLES),
            check_unit_norm(self.source, self.target),
        )
        object.__setattr__(self, 'reports', reports)

        for report in reports:
            if not report.passed:
                logger.warning('operator %s: %s', self, report.describe())

                if self.strict:
                    raise HypothesisError(
                        'hypothesis %s fails for %s -> %s' % (
                            report.condition_id, self.source.label,
                            self.target.label
                        ), report=report
                    )


    @property
    def d(self):
        return self.lam.d


    @property
    def same_space(self):
        return self.source == self.target


    def require_best_approximation_hypotheses(self):
        for report in self.reports:
            if not report.passed:
                raise HypothesisError(
                    'hypothesis %s fails' % report.condition_id, report=report
                )


    def require_same_space(self):
        if not self.same_space:
            raise HypothesisError(
                'Kolmogorov widths are implemented for l_M -> l_M only '
                '(got %s -> %s)' % (self.source.label, self.target.label)
            )


    def apply(self, x):
        """ Tx = (lambda_k x_k), in the truncation dimension d """

        x = np.asarray(x.entries if isinstance(x, FiniteSequence) else x, dtype=float)

        if x.size > self.d:
            raise DomainError('Sequence longer than the weights', x.size, self.d)

        return self.lam.as_array()[:x.size] * x


    def __str__(self):
        return 'T[%s, d=%d]: l_%s -> l_%s' % (
            self.lam.family, self.d, self.source.label, self.target.label
        )


@dataclass(frozen=True)
class WidthReport:
    quantity: str
    order: int
    value: float
    attaining_witness: Optional[Union[FiniteSequence, IndexSet]] = None

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise DomainError('Unknown quantity %r' % self.quantity)

        if not self.value >= 0:
            raise DomainError('Widths are nonnegative', self.value)


    def witness_summary(self):
        w = self.attaining_witness

        if w is None:
            return ''
        elif isinstance(w, IndexSet):
            return 'gamma=%s' % w
        else:
            support = w.support()
            return 'x*=%.17g*e_%s' % (w[support.indices[0]], support)


def _certify(T, value, what):
    if not value > T.lam.tail_bound:
        raise TruncationError(
            '%s = %.17g does not exceed the tail bound %.17g; '
            'increase d' % (what, value, T.lam.tail_bound), T.lam.d
        )

    return value


def _max_outside(lam, gamma):
    """ (k*, lambda_{k*}) maximizing over k <= d not in gamma, smallest k on ties """

    outside = [ k for k in range(1, lam.d + 1) if k not in gamma ]

    if not outside:
        return None, lam.tail_bound

    k_star = max(outside, key=lambda k: (lam[k], -k))
    return k_star, lam[k_star]


def best_approx_over_set(T, gamma):
    """
        E_gamma(T: l_M -> l_N) = max_{k not in gamma} lambda_k,
        attained at x* = e_{k*} / ||e_{k*}||_{l_M}.
    """

    if len(gamma) < 1:
        raise DomainError('gamma must hold at least one index')

    T.require_best_approximation_hypotheses()

    if gamma.indices and gamma.indices[-1] > T.d:
        raise DomainError('gamma reaches beyond d', gamma.indices[-1], T.d)

    k_star, value = _max_outside(T.lam, gamma)
    _certify(T, value, 'max_{k not in gamma} lambda_k')

    witness = FiniteSequence.basis(k_star, T.d, 1 / unit_vector_norm(T.source))
    return WidthReport('E_gamma', len(gamma), value, witness)


def optimal_set(lam, n):
    """ Indices of the n largest weights, smallest indices on ties """

    return IndexSet(tuple(int(k) for k in rearrangement_order(lam)[:n]))


def basis_width(T, n):
    """ D_n(T: l_M -> l_N) = rearranged lambda_{n+1}, attained on gamma_n* """

    T.require_best_approximation_hypotheses()

    if n < 0:
        raise DomainError('Width orders are nonnegative', n)

    if n + 1 > T.d:
        raise TruncationError('D_%d needs d >= %d' % (n, n + 1), T.d)

    value = _certify(T, rearrange_nonincreasing(T.lam)[n], 'rearranged lambda_%d' % (n + 1))
    return WidthReport('D_n', n, value, optimal_set(T.lam, n))


def exhaustive_basis_width(T, n):
    """ min over all n-subsets gamma of {1..d} of max_{k not in gamma} lambda_k """

    if not 0 <= n < T.d:
        raise DomainError('Need 0 <= n < d', n, T.d)

    return min(_max_outside(T.lam, gamma)[1] for gamma in exhaustive_subsets(T.d, n))


def width_on_char_set(T, n):
    """ E_{g_{n-1}}(T: l_M -> l_N) = epsilon_n, with g_0 = {} """

    T.require_best_approximation_hypotheses()

    if n < 1:
        raise DomainError('Characteristic orders start at 1', n)

    triple = characteristic(T.lam)
    value = _certify(T, triple.eps(n), 'epsilon_%d' % n)

    return WidthReport('E_char_set', n, value, triple.g(n - 1))


def kolmogorov_width(T, m):
    """
        d_m(T: l_M -> l_M) = epsilon_n for delta_{n-1} <= m <= delta_n - 1.
        Computed through the closed form only.
    """

    T.require_same_space()

    triple = characteristic(T.lam)
    n = triple.level_of(m)
    value = _certify(T, triple.eps(n), 'epsilon_%d' % n)

    return WidthReport('d_m', m, value, triple.g(n - 1))


def preimage_modular(T, phi):
    """
        sum_k M(|a_k| / lambda_k) for phi = sum a_k e_k: phi is the image
        of an element of the unit ball of l_M when it is <= 1.
        For a 2-d array, one value per row.
    """

    a = np.abs(np.asarray(phi, dtype=float))

    with np.errstate(over='ignore'):
        values = np.sum(evaluate(T.source, a / T.lam.as_array()[:a.shape[-1]]), axis=-1)

    return float(values) if a.ndim == 1 else values


def ball_containment_check(T, n, trials, seed=0, record=None):
    """
        Samples polynomials phi supported on g_n with ||phi||_{l_M} <= epsilon_n
        and checks each is the image of a unit-ball element,
        sum_{k in g_n} M(|a_k| / lambda_k) <= 1 (+1e-9).

        Returns False at the first violation; the counterexample is logged
        and appended to `record` when given.
    """

    T.require_same_space()

    if n < 1 or trials < 1:
        raise DomainError('Need n >= 1 and trials >= 1', n, trials)

    triple = characteristic(T.lam)
    eps = _certify(T, triple.eps(n), 'epsilon_%d' % n)
    support = np.array(triple.g(n).indices) - 1

    rng = np.random.default_rng(seed)
    shape = (trials, support.size)

    phi = np.zeros((trials, T.d))
    phi[:, support] = rng.standard_normal(shape) * rng.exponential(size=shape)

    # Even trials on the sphere of radius epsilon_n, odd ones inside
    radius = np.where(np.arange(trials) % 2 == 0, eps, eps * rng.random(trials))

    norms = luxemburg_norms(T.source, phi)
    live = norms > 0
    phi[live] *= (radius[live] / norms[live])[:, None]

    values = preimage_modular(T, phi)
    failed = np.flatnonzero(live & (values > 1 + CONTAINMENT_SLACK))

    if failed.size:
        trial = int(failed[0])
        counterexample = {
            'n': n, 'trial': trial, 'seed': seed, 'phi': phi[trial].tolist(),
            'epsilon_n': eps, 'preimage_modular': float(values[trial]),
        }

        logger.warning('ball containment fails: %r', counterexample)
        if record is not None:
            record.append(counterexample)

        return False

    return True


def sup_lower_bound_oracle(T, gamma, trials, seed=0):
    """
        Lower bound of sup_{x in B l_M} E_gamma(Tx, l_N): the max of
        ||Tx - S_gamma(Tx)||_{l_N} over random points of the unit sphere
        of l_M and every normalized basis vector. Oracle scale: d <= 32.
    """

    if T.d > SUP_ORACLE_MAX_DIM:
        raise OracleScaleError(
            'oracle scale exceeded: d <= %d' % SUP_ORACLE_MAX_DIM, T.d
        )

    rng = np.random.default_rng(seed)
    unit = 1 / unit_vector_norm(T.source)

    samples = [ FiniteSequence.basis(k, T.d, unit).as_array() for k in range(1, T.d + 1) ]
    samples += [ random_sphere_point(T.source, T.d, rng) for _ in range(trials) ]

    return max(tail_norm(T.target, T.apply(x), gamma) for x in samples)


def well_defined_bound(T, x):
    """
        (||Tx||_{l_N}, max lambda_k): for x in the unit ball of l_M the
        first never exceeds the second under the domination condition.
    """

    return luxemburg_norm(T.target, T.apply(x)), max(T.lam.weights)
