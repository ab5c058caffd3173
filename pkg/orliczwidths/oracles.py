"""
    Falsification harnesses for the inequalities the exact formulas rest on:

        * M(A t1) + M(B t2) <= M(A (t1 + t2)),   t2 > t1 >= 0, A >= B > 0
        * M(u)/u <= M(t)/t,                      0 < u <= t
        * sum p_k b_k N(a_k) <= max_s N(sum p_k a_k / sum_{k<=s} p_k) sum_{k<=s} p_k b_k
          for nonincreasing a >= 0, b >= 0, p > 0 and convex N

    Each check returns whether the inequality holds on one instance;
    run_trials draws random admissible instances and collects counterexamples.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from shewchuk import Expansion

from .errors import DomainError, HypothesisError
from .nterm import tilde_weights
from .orlicz import OrliczFunction, compose_power, evaluate


logger = logging.getLogger(__name__)

INEQUALITY_RTOL = 1e-10
SLOPE_RTOL = 1e-12
LEMMA_MAX_LENGTH = 8


def builtin_gauges():
    """ The built-in gauges the randomized suites draw from """

    return (
        OrliczFunction.power(1),
        OrliczFunction.power(1.5),
        OrliczFunction.power(2),
        OrliczFunction.power(3),
        OrliczFunction.exp_minus_one(),
        OrliczFunction.power_log(1),
        OrliczFunction.power_log(2),
    )


def prop1_check(M, A, B, t1, t2):
    """ M(A t1) + M(B t2) <= M(A (t1 + t2)) """

    if not (t2 > t1 >= 0 and A >= B > 0):
        raise DomainError(
            'Proposition needs t2 > t1 >= 0 and A >= B > 0', A, B, t1, t2
        )

    lhs = evaluate(M, A * t1) + evaluate(M, B * t2)
    rhs = evaluate(M, A * (t1 + t2))

    return lhs <= rhs + INEQUALITY_RTOL * max(1.0, rhs)


def slope_check(M, u, t):
    """ M(u)/u <= M(t)/t """

    if not 0 < u <= t:
        raise DomainError('Slope check needs 0 < u <= t', u, t)

    left, right = evaluate(M, u) / u, evaluate(M, t) / t
    return left <= right + SLOPE_RTOL * max(1.0, right)


def mu_split_check(M, mu, t):
    """ M(mu t) <= mu M(t) for mu in [0, 1] """

    if not (0 <= mu <= 1 and t >= 0):
        raise DomainError('mu-split needs mu in [0, 1] and t >= 0', mu, t)

    right = mu * evaluate(M, t)
    return evaluate(M, mu * t) <= right + SLOPE_RTOL * max(1.0, right)


@dataclass(frozen=True)
class LemmaAInstance:
    N: OrliczFunction
    a: Tuple[float, ...]
    b: Tuple[float, ...]
    p: Tuple[float, ...]

    def __post_init__(self):
        for name in ('a', 'b', 'p'):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))

        if not len(self.a) == len(self.b) == len(self.p) >= 1:
            raise DomainError('a, b and p need equal lengths l >= 1')

        if any(y > x for x, y in zip(self.a, self.a[1:])) or min(self.a) < 0:
            raise DomainError('a must be nonnegative and nonincreasing', self.a)

        if min(self.b) < 0:
            raise DomainError('b must be nonnegative', self.b)

        if min(self.p) <= 0:
            raise DomainError('p must be positive', self.p)


    @property
    def l(self):
        return len(self.a)


def lemmaA_check(inst):
    """ (lhs, rhs, lhs <= rhs) for the Chebyshev-type inequality """

    a, b, p = map(np.array, (inst.a, inst.b, inst.p))

    lhs = math.fsum(p * b * evaluate(inst.N, a))
    total = math.fsum(p * a)

    rhs, p_sum, pb_sum = 0.0, Expansion(), Expansion()
    for k in range(inst.l):
        p_sum += float(p[k])
        pb_sum += float(p[k] * b[k])
        rhs = max(rhs, evaluate(inst.N, total / float(p_sum)) * float(pb_sum))

    return lhs, rhs, lhs <= rhs + INEQUALITY_RTOL * max(1.0, rhs)


@dataclass(frozen=True)
class ReductionCheck:
    """ F_n(m, alpha), its Lemma A bound and sup_{s>n} (s-n) M(lambda~_s/alpha) """

    F: float
    lemma_bound: float
    sup_bound: float
    holds: bool


def theorem3_reduction_check(M, p, weights, n, m, alpha):
    """
        Lemma A with N(t) = M(t^(1/p)), p_k = lambda_k^-p,
        a_k = lambda_k^p m_k / alpha^p, b_k = 0 for k <= n and
        b_k = lambda_k^p beyond (so that p_k b_k = 1), over k = 1..len(m).
        Then sum p_k b_k N(a_k) = F_n(m, alpha) and the Lemma A bound is
        max_{n < s <= len(m)} (s - n) M(lambda~_s / alpha).

        m must be nonnegative with sum 1 and lambda_k m_k^(1/p) nonincreasing.
    """

    lam = np.asarray(weights, dtype=float)[:len(m)]
    m = np.asarray(m, dtype=float)

    if lam.size != m.size:
        raise DomainError('m is longer than the weights', m.size, lam.size)

    N = compose_power(M, p)

    inst = LemmaAInstance(
        N,
        # Running minimum: rounding must not break the ordering of a
        a=tuple(np.minimum.accumulate(lam ** p * m / alpha ** p)),
        b=tuple(np.where(np.arange(1, m.size + 1) > n, lam ** p, 0.0)),
        p=tuple(lam ** -p),
    )

    lhs, rhs, holds = lemmaA_check(inst)

    F = math.fsum(evaluate(M, lam[n:] * m[n:] ** (1 / p) / alpha))

    tilde = tilde_weights(p, lam)
    sup_bound = max(
        ((s - n) * evaluate(M, tilde[s - 1] / alpha) for s in range(n + 1, lam.size + 1)),
        default=0.0
    )

    scale = max(1.0, sup_bound)
    holds = holds and abs(lhs - F) <= INEQUALITY_RTOL * max(1.0, F) \
        and rhs <= sup_bound + INEQUALITY_RTOL * scale

    return ReductionCheck(F, rhs, sup_bound, holds)


# Random admissible instances

def _positive(rng, size=None):
    return np.abs(rng.standard_normal(size)) + 1e-9


def _gauge(rng):
    gauges = builtin_gauges()
    return gauges[int(rng.integers(len(gauges)))]


def random_prop1(rng):
    M = _gauge(rng)
    A, B = sorted(_positive(rng, 2), reverse=True)
    t1, t2 = sorted(_positive(rng, 2))

    if rng.random() < 0.1:
        t1 = 0.0

    return dict(M=M, A=float(A), B=float(B), t1=float(t1), t2=float(t2))


def random_slope(rng):
    M = _gauge(rng)
    u, t = sorted(_positive(rng, 2) * rng.choice([0.01, 1, 5]))
    return dict(M=M, u=float(u), t=float(t))


def random_composable(rng, attempts=20):
    """ (M, p) with M(t^(1/p)) an Orlicz function """

    for _ in range(attempts):
        M = _gauge(rng)
        p = float(rng.choice([0.5, 1.0, 1.5, 2.0, 3.0]))

        try:
            return M, p, compose_power(M, p)
        except HypothesisError:
            continue

    M = OrliczFunction.power(2)
    return M, 1.0, M


def random_lemmaA(rng):
    _, _, N = random_composable(rng)
    l = int(rng.integers(1, LEMMA_MAX_LENGTH + 1))

    a = np.sort(np.abs(rng.standard_normal(l)))[::-1]
    b = _positive(rng, l)
    p = _positive(rng, l)

    return dict(inst=LemmaAInstance(N, tuple(a), tuple(b), tuple(p)))


def random_reduction(rng):
    """
        M, p, nonincreasing weights and a sequence m with sum 1 for which
        lambda_k m_k^(1/p) is nonincreasing and constant on 1..n+1.
    """

    M, p, _ = random_composable(rng)
    l = int(rng.integers(2, LEMMA_MAX_LENGTH + 1))
    n = int(rng.integers(0, l - 1))

    weights = np.sort(_positive(rng, l))[::-1]

    v = np.sort(_positive(rng, l))[::-1]
    v[:n + 1] = v[0]

    m = (v / weights) ** p
    m /= math.fsum(m)

    # Arguments of M stay below lambda_1 / alpha <= 5
    alpha = float(weights[0] * rng.uniform(0.2, 5))
    return dict(M=M, p=p, weights=weights, n=n, m=m, alpha=alpha)


@dataclass
class TrialSummary:
    name: str
    trials: int = 0
    failures: int = 0
    first_counterexample: Optional[dict] = field(default=None, repr=False)

    @property
    def passed(self):
        return self.failures == 0


CHECKS = {
    'prop1': (prop1_check, random_prop1),
    'slope': (slope_check, random_slope),
    'lemmaA': (lambda inst: lemmaA_check(inst)[2], random_lemmaA),
    'theorem3_reduction': (
        lambda **kwargs: theorem3_reduction_check(**kwargs).holds, random_reduction
    ),
}


def run_trials(name, trials, seed):
    """
        Runs `trials` random instances of the named check; trial i draws from
        its own generator seeded by (seed, i), so any trial is reproducible.
    """

    check, generate = CHECKS[name]
    summary = TrialSummary(name)

    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        instance = generate(rng)

        summary.trials += 1

        if not check(**instance):
            summary.failures += 1

            if summary.first_counterexample is None:
                summary.first_counterexample = dict(instance, seed=seed, trial=trial)
                logger.warning(
                    '%s counterexample (seed=%d, trial=%d): %r',
                    name, seed, trial, instance
                )

    return summary
