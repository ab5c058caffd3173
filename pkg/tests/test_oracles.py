import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import gauges
from orliczwidths.errors import DomainError
from orliczwidths.oracles import (
    CHECKS, LemmaAInstance, builtin_gauges, lemmaA_check, mu_split_check,
    prop1_check, random_composable, random_lemmaA, random_reduction,
    run_trials, slope_check, theorem3_reduction_check,
)
from orliczwidths.orlicz import OrliczFunction, compose_power


P1 = OrliczFunction.power(1)
P2 = OrliczFunction.power(2)

positive = st.floats(min_value=1e-6, max_value=1e3)


def test_prop1_examples():
    assert prop1_check(P2, 1, 1, 1, 2)
    assert prop1_check(P2, 2, 1, 0, 3)

    with pytest.raises(DomainError):
        prop1_check(P2, 1, 2, 1, 2)

    with pytest.raises(DomainError):
        prop1_check(P2, 1, 1, 2, 2)


@given(M=gauges, A=positive, B=positive, t1=positive, t2=positive)
@settings(max_examples=300, deadline=None)
def test_prop1(M, A, B, t1, t2):
    A, B = max(A, B), min(A, B)
    t1, t2 = min(t1, t2), max(t1, t2)

    if t1 < t2 and A * (t1 + t2) < 700:
        assert prop1_check(M, A, B, t1, t2)


def test_slope_examples():
    assert slope_check(P1, 0.3, 7)
    assert slope_check(P2, 1, 2)

    with pytest.raises(DomainError):
        slope_check(P2, 2, 1)


def test_mu_split():
    assert mu_split_check(P2, 0.5, 3)
    assert mu_split_check(OrliczFunction.exp_minus_one(), 0, 1)

    with pytest.raises(DomainError):
        mu_split_check(P2, 1.5, 1)


def test_lemmaA_single_term():
    lhs, rhs, holds = lemmaA_check(LemmaAInstance(P2, (0.7,), (2.0,), (3.0,)))

    assert lhs == pytest.approx(rhs, rel=1e-15)
    assert holds


def test_lemmaA_first_weight_only():
    inst = LemmaAInstance(P2, (3, 2, 1), (1, 0, 0), (1, 2, 0.5))
    lhs, rhs, holds = lemmaA_check(inst)

    # s = 1 gives N(sum p a / p_1) p_1 b_1 = N(7.5) = 56.25 >= N(3) = 9
    assert lhs == 9
    assert rhs == pytest.approx(56.25)
    assert holds


def test_lemmaA_instance_validation():
    with pytest.raises(DomainError):
        LemmaAInstance(P2, (1, 2), (1, 1), (1, 1))

    with pytest.raises(DomainError):
        LemmaAInstance(P2, (2, 1), (1, -1), (1, 1))

    with pytest.raises(DomainError):
        LemmaAInstance(P2, (2, 1), (1, 1), (1, 0))

    with pytest.raises(DomainError):
        LemmaAInstance(P2, (2, 1), (1,), (1, 1))


def test_random_instances_are_admissible(rng):
    for _ in range(50):
        M, p, N = random_composable(rng)
        assert N == compose_power(M, p)

        inst = random_lemmaA(rng)['inst']
        assert 1 <= inst.l

        reduction = random_reduction(rng)
        assert sum(reduction['m']) == pytest.approx(1)
        assert 0 <= reduction['n'] < len(reduction['m'])


def test_reduction_check_hand_instance():
    # M(t) = t, p = 1, lambda = (1/2, 1/4), n = 0, m = (1/3, 2/3), alpha = 1:
    # lambda_k m_k = 1/6 on both terms, s = 1 gives the sup 1/2
    check = theorem3_reduction_check(P1, 1, [0.5, 0.25], 0, [1 / 3, 2 / 3], 1.0)

    assert check.F == pytest.approx(1 / 3)
    assert check.lemma_bound == pytest.approx(0.5)
    assert check.sup_bound == pytest.approx(0.5)
    assert check.holds


@pytest.mark.parametrize('name', sorted(CHECKS))
def test_run_trials(name):
    summary = run_trials(name, 2000, seed=7)

    assert summary.trials == 2000
    assert summary.passed, summary.first_counterexample


def test_run_trials_reproducible():
    first, second = run_trials('lemmaA', 50, 3), run_trials('lemmaA', 50, 3)
    assert first == second


def test_run_trials_records_counterexample(monkeypatch, caplog):
    import orliczwidths.oracles as oracles

    monkeypatch.setitem(
        oracles.CHECKS, 'slope', (lambda M, u, t: False, oracles.random_slope)
    )

    summary = run_trials('slope', 5, seed=1)

    assert summary.failures == 5
    assert summary.first_counterexample['trial'] == 0
    assert summary.first_counterexample['seed'] == 1
    assert 'counterexample' in caplog.text


def test_builtin_gauges():
    labels = [ M.label for M in builtin_gauges() ]
    assert len(labels) == len(set(labels)) == 7
