import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import entries, gauges, powers, vectors
from orliczwidths.errors import DomainError, OracleScaleError
from orliczwidths.luxemburg import (
    FiniteSequence, IndexSet, basis_convergence, best_coeff_error_oracle,
    exhaustive_subsets, lp_norm, luxemburg_norm, luxemburg_norms, modular,
    partial_sum_tail, random_sphere_point, tail_norm,
)
from orliczwidths.orlicz import OrliczFunction


P2 = OrliczFunction.power(2)
P1 = OrliczFunction.power(1)
EXP = OrliczFunction.exp_minus_one()


def test_finite_sequence():
    x = FiniteSequence.of([3, 0, 4])

    assert x.d == 3
    assert x[1] == 3 and x[3] == 4 and x[7] == 0
    assert x.support() == IndexSet((1, 3))
    assert (2 * x).entries == (6, 0, 8)
    assert (x + FiniteSequence.of([1])).entries == (4, 0, 4)

    with pytest.raises(DomainError):
        FiniteSequence(())

    with pytest.raises(DomainError):
        FiniteSequence((1, math.inf))


def test_basis():
    assert FiniteSequence.basis(2, 3, 5).entries == (0, 5, 0)

    with pytest.raises(DomainError):
        FiniteSequence.basis(4, 3)


def test_index_set():
    gamma = IndexSet((3, 1))

    assert gamma.indices == (1, 3)
    assert str(gamma) == '{1,3}'
    assert 3 in gamma and 2 not in gamma
    assert list(gamma.mask(4)) == [True, False, True, False]
    assert gamma.complement(4) == IndexSet((2, 4))

    for bad in [(1, 1), (0,), (-2,)]:
        with pytest.raises(DomainError):
            IndexSet(bad)

    with pytest.raises(DomainError):
        IndexSet.of((1, 5), d=4)


def test_modular_examples():
    assert modular(P2, (3, 4), 5) == pytest.approx(1, rel=1e-15)
    assert modular(P1, (1, 1, 1), 2) == pytest.approx(1.5, rel=1e-15)
    assert modular(EXP, (0, 0), 0.1) == 0


def test_modular_rejects_alpha():
    with pytest.raises(DomainError):
        modular(P2, (1,), 0)


def test_norm_examples():
    assert luxemburg_norm(P2, (3, 4)) == pytest.approx(5, rel=1e-14)
    assert luxemburg_norm(P1, (1, -2, 3)) == pytest.approx(6, rel=1e-14)
    assert luxemburg_norm(EXP, (1, 1)) == pytest.approx(1 / math.log(1.5), rel=1e-12)


def test_norm_of_zero(gauge):
    assert luxemburg_norm(gauge, (0, 0, 0)) == 0


def test_norm_is_attained(gauge, rng):
    for _ in range(20):
        x = rng.standard_normal(int(rng.integers(1, 20)))
        alpha = luxemburg_norm(gauge, x)

        assert modular(gauge, x, alpha) <= 1
        assert modular(gauge, x, alpha * (1 - 1e-9)) > 1
        assert modular(gauge, x, alpha) >= 1 - 1e-6


def test_norm_of_spline_gauge():
    M = OrliczFunction.spline([(0, 0), (1, 1), (2, 3)])
    alpha = luxemburg_norm(M, (1, 2))

    assert modular(M, (1, 2), alpha) == pytest.approx(1, abs=1e-12)


def test_norms_of_rows(gauge, rng):
    rows = rng.standard_normal((30, 6)) * rng.exponential(size=(30, 6))
    rows[4] = 0.0

    norms = luxemburg_norms(gauge, rows)

    assert norms[4] == 0

    for row, norm in zip(rows, norms):
        assert norm == pytest.approx(luxemburg_norm(gauge, row), rel=1e-12, abs=0)


def test_norms_of_rows_examples():
    assert list(luxemburg_norms(P2, [(3, 4), (0, 0), (6, 8)])) == pytest.approx([5, 0, 10], rel=1e-14)

    with pytest.raises(DomainError):
        luxemburg_norms(P2, (3, 4))


@given(x=vectors, p=powers)
@settings(max_examples=300, deadline=None)
def test_lp_agreement(x, p):
    assert luxemburg_norm(OrliczFunction.power(p), x) == pytest.approx(lp_norm(x, p), rel=1e-10)


@given(M=gauges, x=vectors, c=entries.filter(lambda c: abs(c) > 1e-3))
@settings(max_examples=200, deadline=None)
def test_homogeneity(M, x, c):
    scaled = luxemburg_norm(M, [c * v for v in x])
    assert scaled == pytest.approx(abs(c) * luxemburg_norm(M, x), rel=1e-10)


@given(M=gauges, pair=st.integers(1, 12).flatmap(
    lambda d: st.tuples(*[st.lists(entries, min_size=d, max_size=d)] * 2)
))
@settings(max_examples=200, deadline=None)
def test_triangle_inequality(M, pair):
    x, y = map(np.array, pair)
    assert luxemburg_norm(M, x + y) <= luxemburg_norm(M, x) + luxemburg_norm(M, y) + 1e-10 * max(1, np.abs(x).sum() + np.abs(y).sum())


@given(M=gauges, x=vectors, shrink=st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_monotone(M, x, shrink):
    x = np.array(x)
    assert luxemburg_norm(M, shrink * x) <= luxemburg_norm(M, x) * (1 + 1e-12)


def test_tail_norm_examples():
    assert tail_norm(P2, (3, 4, 12), IndexSet((3,))) == pytest.approx(5, rel=1e-14)
    assert tail_norm(P1, (1, 1, 1, 1), IndexSet((1, 2))) == pytest.approx(2, rel=1e-14)
    assert tail_norm(EXP, (0, 2, 0, 1), IndexSet((2, 4))) == 0


def test_partial_sums_converge(gauge, rng):
    x = rng.standard_normal(10)
    tails = basis_convergence(gauge, x)

    assert tails[0] == luxemburg_norm(gauge, x)
    assert tails[-1] == 0
    assert all(b <= a * (1 + 1e-12) for a, b in zip(tails, tails[1:]))
    assert partial_sum_tail(gauge, x, 3) == tails[3]


def test_lp_norm():
    assert lp_norm((3, 4), 2) == 5
    assert lp_norm((1, -2, 3), 1) == 6


def test_coeff_oracle_examples():
    assert best_coeff_error_oracle(P2, (3, 4, 12), IndexSet((3,))) == pytest.approx(5, abs=1e-8)
    assert best_coeff_error_oracle(P2, (3, 4), IndexSet()) == luxemburg_norm(P2, (3, 4))
    assert best_coeff_error_oracle(EXP, (1, 0, 0), IndexSet((1,))) == 0


def test_interpolation_is_optimal(gauge, rng):
    for _ in range(5):
        d = int(rng.integers(1, 6))
        x = rng.standard_normal(d)
        gamma = IndexSet(tuple(
            int(k) + 1 for k in rng.choice(d, size=min(d, 2), replace=False)
        ))

        assert best_coeff_error_oracle(gauge, x, gamma, grid_steps=11) >= tail_norm(gauge, x, gamma) - 1e-8


def test_coeff_oracle_scale():
    with pytest.raises(OracleScaleError):
        best_coeff_error_oracle(P2, np.ones(9), IndexSet((1,)))

    with pytest.raises(OracleScaleError):
        best_coeff_error_oracle(P2, np.ones(5), IndexSet((1, 2, 3, 4)))


def test_random_sphere_point(gauge, rng):
    for d in (1, 5, 20):
        assert luxemburg_norm(gauge, random_sphere_point(gauge, d, rng)) == pytest.approx(1, rel=1e-12)


def test_exhaustive_subsets():
    subsets = list(exhaustive_subsets(4, 2))

    assert len(subsets) == 6
    assert subsets[0] == IndexSet((1, 2)) and subsets[-1] == IndexSet((3, 4))
    assert list(exhaustive_subsets(3, 0)) == [IndexSet()]
