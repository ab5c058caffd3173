import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import gauges
from orliczwidths.errors import DomainError, HypothesisError, NonInvertibleGaugeError
from orliczwidths.orlicz import (
    OrliczFunction, check_axioms, check_delta2, check_domination,
    check_unit_norm, compose_power, default_grid, delta2_constant, evaluate,
    inverse, unit_vector_norm,
)


def test_evaluate_examples():
    assert evaluate(OrliczFunction.power(2), 3) == 9
    assert evaluate(OrliczFunction.exp_minus_one(), 1) == pytest.approx(math.e - 1, rel=1e-15)
    assert evaluate(OrliczFunction.power_log(1), 1) == pytest.approx(math.log(2))


def test_evaluate_at_zero(gauge):
    assert evaluate(gauge, 0) == 0


def test_evaluate_negative():
    with pytest.raises(DomainError):
        evaluate(OrliczFunction.power(2), -1)


def test_evaluate_array():
    values = evaluate(OrliczFunction.power(2), np.array([0, 1, 2]))
    assert list(values) == [0, 1, 4]


def test_spline_interpolates_and_extrapolates():
    M = OrliczFunction.spline([(0, 0), (1, 1), (2, 3)])

    assert evaluate(M, 0.5) == 0.5
    assert evaluate(M, 1.5) == 2
    assert evaluate(M, 3) == 5  # last chord, slope 2


@pytest.mark.parametrize('knots', [
    [(0, 0), (1, 2), (2, 1)],          # decreasing value
    [(0, 0), (1, 2), (2, 3)],          # decreasing slopes
    [(0, 1), (1, 2)],                  # not starting at (0, 0)
    [(0, 0), (1, 0)],                  # flat last chord
    [(0, 0), (2, 1), (1, 3)],          # t not increasing
])
def test_spline_validation(knots):
    with pytest.raises(DomainError):
        OrliczFunction.spline(knots)


def test_inverse_examples():
    assert inverse(OrliczFunction.power(2), 4) == pytest.approx(2, rel=1e-15)
    assert inverse(OrliczFunction.exp_minus_one(), 1) == pytest.approx(math.log(2), rel=1e-15)


def test_inverse_at_zero(gauge):
    assert inverse(gauge, 0) == 0


def test_inverse_rejects_flat_spline():
    M = OrliczFunction.spline([(0, 0), (1, 0), (2, 1)])

    with pytest.raises(NonInvertibleGaugeError):
        inverse(M, 0.5)


@given(M=gauges, exponent=st.floats(min_value=-6, max_value=6))
@settings(max_examples=300, deadline=None)
def test_inverse_round_trip(M, exponent):
    u = 10 ** exponent
    assert evaluate(M, inverse(M, u)) == pytest.approx(u, rel=1e-10)


def test_inverse_round_trip_spline():
    M = OrliczFunction.spline([(0, 0), (1, 1), (2, 3), (4, 9)])

    for u in np.geomspace(1e-6, 1e6, 25):
        assert evaluate(M, inverse(M, u)) == pytest.approx(u, rel=1e-10)


def test_axioms(gauge):
    assert check_axioms(gauge, default_grid(gauge)).passed


def test_axioms_linear_grid():
    report = check_axioms(OrliczFunction.power(1), np.linspace(0, 10, 101))
    assert report.passed and report.witness is None


def test_axioms_failure_has_witness():
    # Built without validation, so that the check has something to find
    M = OrliczFunction.spline([(0, 0), (1, 2), (2, 1), (3, 4)], validate=False)
    report = check_axioms(M, np.linspace(0, 3, 31))

    assert not report.passed
    assert report.witness is not None
    assert 'decreases' in report.note


def test_axioms_concave():
    M = OrliczFunction.power(0.5)
    report = check_axioms(M, np.linspace(0, 10, 101))

    assert not report.passed
    assert 'convex' in report.note


def test_axioms_power_log():
    assert check_axioms(OrliczFunction.power_log(1), np.linspace(0, 10, 1001)).passed


def test_delta2():
    grid = np.geomspace(1e-3, 50, 500)

    power = check_delta2(OrliczFunction.power(2), grid)
    assert power.passed
    assert power.statistic == pytest.approx(4)

    assert check_delta2(OrliczFunction.power(1), grid).statistic == pytest.approx(2)

    exp = check_delta2(OrliczFunction.exp_minus_one(), grid)
    assert not exp.passed and exp.witness is not None


def test_delta2_constant():
    grid = np.geomspace(1e-3, 10, 100)
    assert delta2_constant(OrliczFunction.power(3), grid) == pytest.approx(8)


def test_domination():
    assert check_domination(OrliczFunction.power(3), OrliczFunction.power(2), 1000).passed
    assert check_domination(OrliczFunction.power(2), OrliczFunction.power(2), 1000).passed

    report = check_domination(OrliczFunction.power(2), OrliczFunction.power(3), 1000)
    assert not report.passed
    assert report.witness[0] == pytest.approx(0.001)
    assert report.describe().startswith('domination_3starstar: FAILED')


def test_domination_at_half():
    # Two samples: t = 0.5 and t = 1
    report = check_domination(OrliczFunction.power(2), OrliczFunction.power(3), 2)
    assert report.witness[0] == 0.5
    assert report.witness[1] == (0.25, 0.125)


def test_unit_vector_norm():
    assert unit_vector_norm(OrliczFunction.power(2.5)) == pytest.approx(1, rel=1e-15)
    assert unit_vector_norm(OrliczFunction.exp_minus_one()) == pytest.approx(1 / math.log(2), rel=1e-12)

    M = OrliczFunction.power_log(1)
    assert evaluate(M, 1 / unit_vector_norm(M)) == pytest.approx(1, rel=1e-10)


def test_unit_norm_condition():
    assert check_unit_norm(OrliczFunction.power(1), OrliczFunction.power(3)).passed
    assert not check_unit_norm(OrliczFunction.power(2), OrliczFunction.exp_minus_one()).passed


def test_compose_power_folds_powers():
    assert compose_power(OrliczFunction.power(2), 2) == OrliczFunction.power(1)


def test_compose_power_identity():
    M = OrliczFunction.exp_minus_one()
    assert compose_power(M, 1) == M


def test_compose_power_concave():
    with pytest.raises(HypothesisError) as info:
        compose_power(OrliczFunction.power(1), 2)

    assert info.value.report.condition_id == 'composed_orlicz'
    assert 'Theorem 3 hypothesis violated' in str(info.value)


def test_compose_power_composed():
    M = OrliczFunction.exp_minus_one()
    N = compose_power(M, 0.5)

    assert N.kind == 'composed'
    assert evaluate(N, 2) == pytest.approx(math.expm1(4))
    assert compose_power(N, 2) == OrliczFunction('composed', p=1.0, base=M)


@given(M=gauges, u=st.floats(min_value=1e-3, max_value=1e2), t=st.floats(min_value=1e-3, max_value=1e2))
@settings(max_examples=300, deadline=None)
def test_slope_monotone(M, u, t):
    u, t = sorted((u, t))
    assert evaluate(M, u) / u <= evaluate(M, t) / t + 1e-12 * max(1, evaluate(M, t) / t)


@given(M=gauges, mu=st.floats(min_value=0, max_value=1), t=st.floats(min_value=0, max_value=1e2))
@settings(max_examples=300, deadline=None)
def test_mu_split(M, mu, t):
    right = mu * evaluate(M, t)
    assert evaluate(M, mu * t) <= right + 1e-12 * max(1, right)
