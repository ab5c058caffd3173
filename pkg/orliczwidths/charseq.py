"""
    Diagonal multipliers and their characteristic sequences.

    For positive weights lambda_1..lambda_d:

        epsilon_1 > epsilon_2 > ...   distinct weight values, decreasing
        g_n = {k : lambda_k >= epsilon_n}
        delta_n = |g_n|               (delta_0 = 0, g_0 = {})

    Ties are grouped by exact float equality. Quantize the weights first
    if tolerance-grouping is wanted.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DomainError, TruncationError
from .luxemburg import IndexSet


logger = logging.getLogger(__name__)

FAMILIES = ('power-decay', 'geometric', 'csv', 'custom')


@dataclass(frozen=True)
class WeightSequence:
    """
        Weights lambda_1..lambda_d > 0 of a diagonal operator, with a
        declared bound tail_bound >= lambda_k for every k > d.
        tail_bound <= min weights; lambda_k -> 0 is modelled by it.
    """

    weights: Tuple[float, ...]
    tail_bound: float = 0.0
    family: str = 'custom'

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)

        if not weights:
            raise DomainError('A weight sequence needs d >= 1')

        if not all(w > 0 and math.isfinite(w) for w in weights):
            raise DomainError('Weights must be positive and finite', weights)

        if not 0 <= self.tail_bound <= min(weights):
            raise DomainError(
                'tail_bound must lie in [0, min weights]',
                self.tail_bound, min(weights)
            )

        if self.family not in FAMILIES:
            raise DomainError('Unknown weight family %r' % self.family)

        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'tail_bound', float(self.tail_bound))


    @classmethod
    def power_decay(cls, beta, d):
        """ lambda_k = k^(-beta), tail bounded by (d+1)^(-beta) """

        if not beta > 0:
            raise DomainError('power-decay needs beta > 0', beta)

        k = np.arange(1, d + 1, dtype=float)
        return cls(tuple(k ** -beta), (d + 1.0) ** -beta, 'power-decay')


    @classmethod
    def geometric(cls, q, d):
        """ lambda_k = q^k, 0 < q < 1, tail bounded by q^(d+1) """

        if not 0 < q < 1:
            raise DomainError('geometric needs 0 < q < 1', q)

        k = np.arange(1, d + 1, dtype=float)
        return cls(tuple(q ** k), q ** (d + 1.0), 'geometric')


    @property
    def d(self):
        return len(self.weights)


    def as_array(self):
        return np.array(self.weights)


    def is_nonincreasing(self):
        return all(b <= a for a, b in zip(self.weights, self.weights[1:]))


    def permuted(self, perm):
        """ Weights reordered by a permutation of 0..d-1 """

        return WeightSequence(
            tuple(self.weights[i] for i in perm), self.tail_bound, self.family
        )


    def __getitem__(self, k):
        """ lambda_k, 1-based """

        if not 1 <= k <= self.d:
            raise IndexError(k)

        return self.weights[k - 1]


    def __len__(self):
        return self.d


@dataclass(frozen=True)
class CharacteristicTriple:
    """ The sequences epsilon, g and delta of a weight sequence """

    epsilon: Tuple[float, ...]
    g_sets: Tuple[IndexSet, ...]
    delta: Tuple[int, ...]

    @property
    def r(self):
        return len(self.epsilon)


    def eps(self, n):
        """ epsilon_n, 1-based """

        if not 1 <= n <= self.r:
            raise TruncationError('epsilon_%d is not in the truncated triple' % n, n, self.r)

        return self.epsilon[n - 1]


    def g(self, n):
        """ g_n, with g_0 = {} """

        if n == 0:
            return IndexSet()

        if not 1 <= n <= self.r:
            raise TruncationError('g_%d is not in the truncated triple' % n, n, self.r)

        return self.g_sets[n - 1]


    def delta_at(self, n):
        """ delta_n, with delta_0 = 0 """

        if n == 0:
            return 0

        if not 1 <= n <= self.r:
            raise TruncationError('delta_%d is not in the truncated triple' % n, n, self.r)

        return self.delta[n - 1]


    def level_of(self, m):
        """ The n with delta_{n-1} <= m < delta_n """

        if m < 0:
            raise DomainError('Width orders are nonnegative', m)

        for n, dn in enumerate(self.delta, start=1):
            if m < dn:
                return n

        raise TruncationError(
            'order %d is beyond delta_r = %d' % (m, self.delta[-1]), m
        )


def rearrangement_order(lam):
    """ 1-based indices of the weights in nonincreasing order, smallest index first on ties """

    return np.argsort(-lam.as_array(), kind='stable') + 1


def rearrange_nonincreasing(lam):
    """ The weights sorted in nonincreasing order """

    return lam.as_array()[rearrangement_order(lam) - 1].tolist()



def characteristic(lam):
    """
        epsilon, g and delta over indices 1..d, by the recurrence

            epsilon_1 = max lambda_k,  g_1 = {k : lambda_k = epsilon_1}
            epsilon_n = max_{k not in g_{n-1}} lambda_k,
            g_n = g_{n-1} + {k : lambda_k = epsilon_n}
    """

    remaining = dict(enumerate(lam.weights, start=1))
    members = []
    epsilon, g_sets, delta = [], [], []

    while remaining:
        level = max(remaining.values())
        new = [ k for k, w in remaining.items() if w == level ]

        for k in new:
            del remaining[k]

        members.extend(new)
        epsilon.append(level)
        g_sets.append(IndexSet(tuple(members)))
        delta.append(len(members))

    return CharacteristicTriple(tuple(epsilon), tuple(g_sets), tuple(delta))


def rearrangement_consistency(lam, triple=None):
    """
        Whether rearranged lambda_k = epsilon_n for every
        k in (delta_{n-1}, delta_n], exactly.
    """

    if triple is None:
        triple = characteristic(lam)

    bar = rearrange_nonincreasing(lam)

    if triple.delta[-1] != len(bar):
        return False

    previous = 0
    for eps, dn in zip(triple.epsilon, triple.delta):
        if any(v != eps for v in bar[previous:dn]):
            return False
        previous = dn

    return True


def check_level_sets(lam, triple):
    """ Whether g_n = {k : lambda_k >= epsilon_n} exactly, for every n """

    return all(
        g.indices == tuple(
            k for k, w in enumerate(lam.weights, start=1) if w >= eps
        )
        for eps, g in zip(triple.epsilon, triple.g_sets)
    )
