"""
    Best n-term approximation of the images T(B l_p) in l_M.

    For nonincreasing weights lambda and M with M(t^(1/p)) convex:

        sigma_n(T: l_p -> l_M) = max_{s > n} xi_s,
        xi_s = lambda~_s / M^-1(1 / (s - n)),
        lambda~_s = (sum_{k <= s} lambda_k^-p)^(-1/p)

    The maximum is attained at a finite s*, by the sequence
    x*_k = (lambda_k^p sum_{j <= s*} lambda_j^-p)^(-1/p), k <= s*.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from shewchuk import Expansion

from .errors import DomainError, HypothesisError, OracleScaleError, TruncationError
from .luxemburg import FiniteSequence, exhaustive_subsets, luxemburg_norm, tail_norm
from .orlicz import compose_power, evaluate, inverse


logger = logging.getLogger(__name__)

SEARCH_MODES = ('certified_family', 'heuristic')
DEFAULT_PATIENCE = 1000
TIE_RTOL = 1e-12
ENUMERATION_MAX_DIM = 20
ENUMERATION_MAX_SUBSETS = 10 ** 6
REBASE_LOG = math.log(1e150)


@dataclass(frozen=True)
class SearchPolicy:
    """
        How far sigma_exact scans s.

        certified_family stops as soon as an upper envelope of every
        remaining xi_t drops to the best value found (exact s*);
        heuristic stops after `patience` non-improving steps.
        Both stop at s_cap (default: d).
    """

    s_cap: Optional[int] = None
    patience: int = DEFAULT_PATIENCE
    mode: str = 'certified_family'

    def __post_init__(self):
        if self.mode not in SEARCH_MODES:
            raise DomainError('Unknown search mode %r' % self.mode)

        if self.patience < 1:
            raise DomainError('patience must be positive', self.patience)


@dataclass(frozen=True)
class SigmaResult:
    value: float
    s_star: int
    xi_trace: Tuple[Tuple[int, float], ...]
    extremal: FiniteSequence
    certified: bool


def _require_nonincreasing(lam):
    if not lam.is_nonincreasing():
        raise HypothesisError(
            'Theorem 3 needs nonincreasing weights; rearrange them first',
            lam.family
        )


def _require_admissible(lam, n, s):
    if n < 0:
        raise DomainError('n must be nonnegative', n)

    if s <= n:
        raise DomainError('xi_s needs s > n', s, n)

    if s > lam.d:
        raise TruncationError('s = %d is beyond the truncation d = %d' % (s, lam.d), s)


def tilde_weights(p, weights):
    """
        [lambda~_1, ..., lambda~_s], lambda~_s = (sum_{k<=s} lambda_k^-p)^(-1/p).

        The running sum is a shewchuk Expansion of (c / lambda_k)^p for a
        scale c. c starts at lambda_1 and moves to the current weight
        whenever a term would exceed 1e150, so tiny weights never overflow.
    """

    p = float(p)
    scale, acc, tilde = None, Expansion(), []

    for w in map(float, weights):
        if scale is None or p * (math.log(scale) - math.log(w)) > REBASE_LOG:
            if scale is not None:
                acc = Expansion(float(acc) * (w / scale) ** p)

            scale = w

        acc += (scale / w) ** p
        tilde.append(scale * float(acc) ** (-1 / p))

    return tilde


def xi(M, p, lam, n, s):
    """ lambda~_s / M^-1(1 / (s - n)) """

    _require_admissible(lam, n, s)
    _require_nonincreasing(lam)

    return tilde_weights(p, lam.weights[:s])[-1] / inverse(M, 1 / (s - n))


def sigma_exact(M, p, lam, n, search=None):
    """
        sigma_n(T: l_p -> l_M) by scanning s = n+1, n+2, ... and keeping
        the largest xi_s (the smallest s on ties).

        In certified_family mode the scan stops at the first s where

            max(xi_s, lambda_s (s-n)^(-1/p) / M^-1(1/(s-n)))

        is at most the best value: for t >= s, sum_{k<=t} lambda_k^-p >=
        sum_{k<=s} lambda_k^-p + (t-s) lambda_s^-p, and M^-1(u)^p / u is
        nonincreasing because M(t^(1/p)) is convex, so that maximum bounds
        every later xi_t (beyond d too, since the tail stays below lambda_d).
    """

    p = float(p)
    if not p > 0:
        raise DomainError('p must be positive', p)

    search = search or SearchPolicy()

    if n >= lam.d:
        raise TruncationError('no admissible s > n = %d within d = %d' % (n, lam.d), n)

    _require_nonincreasing(lam)
    compose_power(M, p)

    s_cap = lam.d if search.s_cap is None else min(search.s_cap, lam.d)
    if s_cap <= n:
        raise DomainError('s_cap must exceed n', s_cap, n)

    tilde = tilde_weights(p, lam.weights[:s_cap])

    trace = []
    best, s_star, stale = -math.inf, None, 0
    certified = False

    for s in range(n + 1, s_cap + 1):
        lam_s = lam.weights[s - 1]

        m_inv = inverse(M, 1 / (s - n))
        value = tilde[s - 1] / m_inv
        trace.append((s, value))

        if value > best * (1 + TIE_RTOL):
            best, s_star, stale = value, s, 0
        else:
            stale += 1

        if search.mode == 'certified_family':
            envelope = max(value, lam_s * (s - n) ** (-1 / p) / m_inv)

            if envelope <= best:
                certified = True
                break

        elif stale >= search.patience:
            break

    if not certified:
        logger.warning(
            'sigma_%d search stopped at s=%d without certification '
            '(mode=%s, d=%d); s*=%d is the best found so far',
            n, trace[-1][0], search.mode, lam.d, s_star
        )

    return SigmaResult(
        best, s_star, tuple(trace), extremal_sequence(p, lam, s_star), certified
    )


def extremal_sequence(p, lam, s_star):
    """
        x*_k = (lambda_k^p sum_{j <= s*} lambda_j^-p)^(-1/p) for k <= s*,
        0 beyond; it lies on the unit sphere of l_p.
    """

    if not 1 <= s_star <= lam.d:
        raise TruncationError('s* = %d outside 1..d = %d' % (s_star, lam.d), s_star)

    # x*_k = lambda~_{s*} / lambda_k
    head = np.array(lam.weights[:s_star])
    tilde = tilde_weights(p, head)[-1]

    entries = np.zeros(lam.d)
    entries[:s_star] = tilde / head
    return FiniteSequence.of(entries)


def _check_enumeration_scale(d, n):
    if d > ENUMERATION_MAX_DIM and math.comb(d, n) > ENUMERATION_MAX_SUBSETS:
        raise OracleScaleError(
            'enumeration scale exceeded: C(%d, %d) subsets' % (d, n), d, n
        )


def sigma_numeric(M, x, n):
    """
        sigma_n(x, l_M) = min over all n-subsets gamma of ||x - S_gamma(x)||,
        by enumeration (oracle). See sigma_sorted for the fast path.
    """

    values = np.asarray(x.entries if isinstance(x, FiniteSequence) else x, dtype=float)
    d = values.size

    if n < 0:
        raise DomainError('n must be nonnegative', n)

    if n >= d:
        return 0.0

    _check_enumeration_scale(d, n)

    return min(tail_norm(M, values, gamma) for gamma in exhaustive_subsets(d, n))


def sigma_sorted(M, x, n):
    """ sigma_n(x, l_M) by zeroing the n entries largest in modulus """

    a = np.abs(np.asarray(x.entries if isinstance(x, FiniteSequence) else x, dtype=float))

    if n > 0:
        a[np.argsort(-a, kind='stable')[:n]] = 0.0

    return luxemburg_norm(M, a)


def lp_unit_vector(d, p, rng, interior=False):
    """
        Random point of the unit sphere of l_p^d (random signs and
        magnitudes, normalized by the p-sum); inside the ball if interior.
    """

    x = rng.standard_normal(d) * rng.exponential(size=d)

    if not np.any(x):
        x[0] = 1.0

    x /= math.fsum(np.abs(x) ** p) ** (1 / p)

    if interior:
        x *= rng.random()

    return x


def sigma_sup_oracle(M, p, lam, n, trials, seed=0, candidates=(), method='enumerate'):
    """
        Lower bound of sup_{x in B l_p} sigma_n(Tx, l_M) over
        (a) `trials` random unit vectors of l_p,
        (b) every candidate extremal sequence built on 1..s, s = n+1..d,
        (c) any extra `candidates` (e.g. the x* of sigma_exact).
    """

    numeric = { 'enumerate': sigma_numeric, 'sorted': sigma_sorted }[method]

    if method == 'enumerate':
        _check_enumeration_scale(lam.d, n)

    rng = np.random.default_rng(seed)
    weights = lam.as_array()

    points = [ lp_unit_vector(lam.d, p, rng) for _ in range(trials) ]
    points += [ extremal_sequence(p, lam, s).as_array() for s in range(n + 1, lam.d + 1) ]
    points += [
        c.as_array() if isinstance(c, FiniteSequence) else np.asarray(c, dtype=float)
        for c in candidates
    ]

    return max(numeric(M, weights * x, n) for x in points)


def vanishing_trace(M, p, lam, n, alpha):
    """ [(s, (s-n) M(lambda~_s / alpha)) for s = n+1..d]; tends to 0 """

    if not alpha > 0:
        raise DomainError('alpha must be positive', alpha)

    trace = []
    tilde = tilde_weights(p, lam.weights)

    for s in range(n + 1, lam.d + 1):
        trace.append((s, (s - n) * evaluate(M, tilde[s - 1] / alpha)))

    return trace
