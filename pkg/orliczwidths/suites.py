"""
    Verification suites and table rows, as nodes of an execution graph.

    Each suite is a Node whose result is a JSON-friendly dict with at least
    `passed`, `checked` and `failures`. Counterexamples are kept in
    node.variables['counterexamples'] (and logged), so a saved report holds
    everything needed to reproduce them. All randomness derives from the
    seed given to the suite.
"""

import logging

import numpy as np

from .charseq import WeightSequence, characteristic
from .decorators import bound, task
from .luxemburg import IndexSet, lp_norm, luxemburg_norm, tail_norm
from .node import OpNode, Root
from .nterm import (
    lp_unit_vector, sigma_exact, sigma_numeric, sigma_sorted, sigma_sup_oracle,
)
from .oracles import CHECKS, builtin_gauges, random_composable, run_trials
from .orlicz import OrliczFunction
from .widths import (
    DiagonalOperator, ball_containment_check, basis_width, best_approx_over_set,
    exhaustive_basis_width, kolmogorov_width, sup_lower_bound_oracle,
    width_on_char_set,
)


logger = logging.getLogger(__name__)

ORACLE_ATOL = 1e-9
LP_RTOL = 1e-10
POWERS = (1.0, 1.5, 2.0, 3.0)
SHARPNESS_ATTEMPTS = 100

STREAMS = (
    'lp_agreement', 'theorem1', 'corollary1', 'theorem2', 'theorem3_sharpness'
)

WIDTH_QUANTITIES = ('D_n', 'E_char_set', 'd_m')
TABLE_QUANTITIES = WIDTH_QUANTITIES + ('sigma',)


def _rng(seed, stream):
    """ Independent generator per suite, all derived from the same seed """

    return np.random.default_rng([seed, STREAMS.index(stream)])


def _record(node, counterexample):
    node.variables.setdefault('counterexamples', []).append(counterexample)
    logger.warning('%s counterexample: %r', node.name, counterexample)


def _summary(node, checked, **extra):
    failures = len(node.variables.get('counterexamples', []))
    return dict(passed=failures == 0, checked=checked, failures=failures, **extra)


def _random_gauge(rng):
    gauges = builtin_gauges()
    return gauges[int(rng.integers(len(gauges)))]


def _random_weights(rng, d):
    """ d positive weights drawn from a few levels, so that ties appear """

    levels = np.round(rng.uniform(0.05, 1, size=max(1, d // 2)), 3)
    return WeightSequence(tuple(rng.choice(levels, size=d)))


# Suites

@task('verify.lp_agreement.{seed}')
@bound
def lp_agreement(node, seed, vectors=500):
    """ Luxemburg norm of power gauges against the closed-form l_p norm """

    rng = _rng(seed, 'lp_agreement')
    checked, worst = 0, 0.0

    for p in POWERS:
        M = OrliczFunction.power(p)

        for _ in range(vectors):
            d = int(rng.integers(1, 65))
            x = rng.standard_normal(d) * rng.exponential(size=d)

            if not np.any(x):
                continue

            expected = lp_norm(x, p)
            error = abs(luxemburg_norm(M, x) - expected) / expected

            checked += 1
            worst = max(worst, error)

            if error > LP_RTOL:
                _record(node, dict(p=p, x=x.tolist(), expected=expected, error=error))

    return _summary(node, checked, worst_relative_error=worst)


@task('verify.theorem1.{seed}')
@bound
def theorem1_sandwich(node, seed, instances=100, trials=50):
    """
        The sampled sup over the unit ball never exceeds the exact
        E_gamma, and the basis witness attains it.
    """

    rng = _rng(seed, 'theorem1')

    for i in range(instances):
        d = int(rng.integers(2, 17))
        q_source, q_target = sorted(float(q) for q in rng.choice(POWERS, size=2))

        T = DiagonalOperator(
            _random_weights(rng, d),
            OrliczFunction.power(q_source), OrliczFunction.power(q_target)
        )

        n = int(rng.integers(1, d))
        gamma = IndexSet(tuple(int(k) + 1 for k in rng.choice(d, size=n, replace=False)))

        report = best_approx_over_set(T, gamma)
        lower = sup_lower_bound_oracle(T, gamma, trials, seed=int(rng.integers(2 ** 31)))
        attained = tail_norm(T.target, T.apply(report.attaining_witness), gamma)

        if lower > report.value + ORACLE_ATOL \
                or abs(attained - report.value) > ORACLE_ATOL:
            _record(node, dict(
                instance=i, weights=T.lam.weights, source=q_source,
                target=q_target, gamma=gamma.indices, value=report.value,
                lower_bound=lower, attained=attained,
            ))

    return _summary(node, instances)


@task('verify.corollary1.{seed}')
@bound
def corollary1_exhaustive(node, seed, instances=20, max_order=4):
    """ basis_width equals the minimum over every n-subset, exactly """

    rng = _rng(seed, 'corollary1')
    checked = 0

    for i in range(instances):
        d = int(rng.integers(2, 13))
        M = _random_gauge(rng)
        T = DiagonalOperator(_random_weights(rng, d), M, M)

        for n in range(min(max_order, d - 1) + 1):
            value = basis_width(T, n).value
            expected = exhaustive_basis_width(T, n)
            checked += 1

            if value != expected:
                _record(node, dict(
                    instance=i, weights=T.lam.weights, n=n,
                    value=value, exhaustive=expected,
                ))

    return _summary(node, checked)


@task('verify.theorem2.{seed}')
@bound
def theorem2_staircase(node, seed, instances=50, trials=1000):
    """
        d_m is the staircase epsilon_n over [delta_{n-1}, delta_n - 1],
        matches E on the characteristic sets, and the polynomials of norm
        <= epsilon_n on g_n are images of the unit ball.
    """

    rng = _rng(seed, 'theorem2')
    checked = 0

    for i in range(instances):
        d = int(rng.integers(2, 13))
        M = _random_gauge(rng)
        lam = _random_weights(rng, d)

        T = DiagonalOperator(lam, M, M)
        triple = characteristic(lam)

        widths = [ kolmogorov_width(T, m).value for m in range(triple.delta[-1]) ]

        for m, value in enumerate(widths):
            n = triple.level_of(m)
            checked += 1

            if value != triple.eps(n) or value != width_on_char_set(T, n).value:
                _record(node, dict(instance=i, weights=lam.weights, m=m, value=value))

        if any(b > a for a, b in zip(widths, widths[1:])):
            _record(node, dict(instance=i, weights=lam.weights, widths=widths))

        n = int(rng.integers(1, triple.r + 1))
        violations = []

        if not ball_containment_check(
            T, n, trials, seed=int(rng.integers(2 ** 31)), record=violations
        ):
            _record(node, dict(instance=i, weights=lam.weights, gauge=M.label, **violations[0]))

    return _summary(node, checked)


@task('verify.theorem3_worked')
@bound
def theorem3_worked(node):
    """
        M(t) = t, p = 1, lambda_k = 2^-k, n = 1: sigma = 1/6 at s* = 2,
        with x* = (1/3, 2/3, 0, ...).
    """

    M, p, n = OrliczFunction.power(1), 1.0, 1
    lam = WeightSequence.geometric(0.5, 8)

    result = sigma_exact(M, p, lam, n)
    oracle = sigma_sup_oracle(M, p, lam, n, trials=100, candidates=[result.extremal])
    attained = sigma_numeric(M, lam.as_array() * result.extremal.as_array(), n)

    expected_x = np.zeros(lam.d)
    expected_x[:2] = 1 / 3, 2 / 3

    trace = [ value for _, value in result.xi_trace[:2] ]

    checks = dict(
        value=abs(result.value - 1 / 6) <= 1e-12,
        s_star=result.s_star == 2,
        certified=result.certified,
        trace=np.allclose(trace, [1 / 6, 1 / 7], rtol=0, atol=1e-12),
        extremal=np.allclose(result.extremal.as_array(), expected_x, rtol=0, atol=1e-12),
        oracle=abs(oracle - 1 / 6) <= ORACLE_ATOL,
        attained=abs(attained - 1 / 6) <= ORACLE_ATOL,
    )

    failed = sorted(k for k, ok in checks.items() if not ok)
    if failed:
        _record(node, dict(
            failed=failed, value=result.value, s_star=result.s_star,
            trace=result.xi_trace, oracle=oracle, attained=attained,
        ))

    return _summary(node, len(checks), value=result.value, s_star=result.s_star)


def _sharpness_instance(rng):
    """
        A random decaying family whose sigma_exact search certifies s*
        within d, after at most SHARPNESS_ATTEMPTS draws; None otherwise.
    """

    for attempt in range(SHARPNESS_ATTEMPTS):
        M, p, _ = random_composable(rng)
        d = int(rng.integers(2, 9))

        if rng.random() < 0.5:
            lam = WeightSequence.power_decay(float(rng.uniform(0.5, 2)), d)
        else:
            lam = WeightSequence.geometric(float(rng.uniform(0.3, 0.9)), d)

        n = int(rng.integers(0, min(3, d - 1) + 1))
        result = sigma_exact(M, p, lam, n)

        if result.certified:
            return M, p, lam, n, result, attempt

    return None


@task('verify.theorem3_sharpness.{seed}')
@bound
def theorem3_sharpness(node, seed, instances=50, points=200):
    """
        On random decaying families: T x* attains sigma_exact, and no
        random point of the l_p unit ball beats it. Only certified
        instances are checked; uncertified draws are replaced.
    """

    rng = _rng(seed, 'theorem3_sharpness')
    certified = resampled = 0

    for i in range(instances):
        instance = _sharpness_instance(rng)

        if instance is None:
            _record(node, dict(
                instance=i, reason='no certified family in %d draws' % SHARPNESS_ATTEMPTS
            ))
            continue

        M, p, lam, n, result, attempt = instance
        certified += 1
        resampled += attempt
        d = lam.d

        tol = ORACLE_ATOL * max(1.0, result.value)
        weights = lam.as_array()

        attained = sigma_numeric(M, weights * result.extremal.as_array(), n)
        if abs(attained - result.value) > tol:
            _record(node, dict(
                instance=i, gauge=M.label, p=p, weights=lam.weights, n=n,
                value=result.value, attained=attained,
            ))

        for j in range(points):
            x = lp_unit_vector(d, p, rng, interior=bool(j % 2))
            value = sigma_sorted(M, weights * x, n)

            if value > result.value + tol:
                _record(node, dict(
                    instance=i, gauge=M.label, p=p, weights=lam.weights, n=n,
                    value=result.value, x=x.tolist(), sigma_x=value,
                ))
                break

    return _summary(node, instances, certified=certified, resampled=resampled)


@task('verify.inequality.{name}.{seed}')
@bound
def inequality_suite(node, name, seed, trials):
    """ run_trials for one inequality, as a suite """

    summary = run_trials(name, trials, seed)

    if summary.first_counterexample is not None:
        node.variables['counterexamples'] = [ summary.first_counterexample ]

    return dict(
        passed=summary.passed, checked=summary.trials, failures=summary.failures
    )


def verify_graph(seed, trials):
    """ Root running every verification suite """

    suites = [
        lp_agreement(seed),
        theorem1_sandwich(seed),
        corollary1_exhaustive(seed),
        theorem2_staircase(seed),
        theorem3_worked(),
        theorem3_sharpness(seed),
    ]

    suites += [ inequality_suite(name, seed, trials) for name in CHECKS ]

    return Root('verify.%d' % seed, *suites)


# Table rows

def row(quantity, order, value, certified, witness=''):
    return dict(
        quantity=quantity, order=int(order), value=float(value),
        certified=bool(certified), witness=witness
    )


@task('operator', node_class=OpNode)
def operator(lam, source, target):
    return DiagonalOperator(lam, source, target)


@task('row.{quantity}.{order}')
def width_row(T, quantity, order):
    compute = {
        'D_n': basis_width,
        'E_char_set': width_on_char_set,
        'd_m': kolmogorov_width,
    }[quantity]

    report = compute(T, order)
    return row(quantity, order, report.value, True, report.witness_summary())


@task('row.sigma.{n}')
def sigma_row(M, p, lam, n, search=None):
    result = sigma_exact(M, p, lam, n, search)
    return row('sigma', n, result.value, result.certified, 's*=%d' % result.s_star)


def table_graph(quantities, lam, source, target=None, p=None,
                n_range=(), m_range=(), search=None):
    """
        Root with one node per table row. D_n and sigma rows take their
        orders from n_range, E_char_set from the positive orders in
        n_range and d_m from m_range. The width rows share one operator
        l_source -> l_target (l_source -> l_source by default); sigma rows
        are for T: l_p -> l_source.
    """

    # one node per (quantity, order)
    n_range, m_range = sorted(set(n_range)), sorted(set(m_range))
    rows = []

    if any(q in WIDTH_QUANTITIES for q in quantities):
        T = operator(lam, source, target or source)

    for quantity in quantities:
        if quantity == 'sigma':
            rows += [ sigma_row(source, p, lam, n, search) for n in n_range ]
        elif quantity == 'd_m':
            rows += [ width_row(T, quantity, m) for m in m_range ]
        elif quantity == 'E_char_set':
            rows += [ width_row(T, quantity, n) for n in n_range if n >= 1 ]
        else:
            rows += [ width_row(T, quantity, n) for n in n_range ]

    return Root('table', *rows)


def table_rows(root):
    """ Runs a table graph; rows sorted by (quantity, order) """

    return sorted(root.run().values(), key=lambda r: (r['quantity'], r['order']))
