import json

import pytest

from orliczwidths.charseq import WeightSequence
from orliczwidths.node import Root
from orliczwidths.oracles import CHECKS
from orliczwidths.orlicz import OrliczFunction
from orliczwidths.suites import (
    corollary1_exhaustive, inequality_suite, lp_agreement, table_graph,
    table_rows, theorem1_sandwich, theorem2_staircase, theorem3_sharpness,
    theorem3_worked, verify_graph,
)


def test_theorem3_worked():
    result = theorem3_worked().run()

    assert result['passed']
    assert result['checked'] == 7
    assert result['s_star'] == 2
    assert result['value'] == pytest.approx(1 / 6, abs=1e-12)


@pytest.mark.parametrize('suite', [
    lambda: lp_agreement(3, vectors=10),
    lambda: theorem1_sandwich(4, instances=3, trials=10),
    lambda: corollary1_exhaustive(5, instances=3),
    lambda: theorem2_staircase(6, instances=3, trials=50),
    lambda: theorem3_sharpness(7, instances=3, points=20),
])
def test_small_suites_pass(suite):
    node = suite()
    result = node.run()

    assert result['passed'], node.variables.get('counterexamples')
    assert result['failures'] == 0
    assert result['checked'] > 0


def test_sharpness_checks_certified_instances_only():
    result = theorem3_sharpness(0, instances=10, points=5).run()

    assert result['passed']
    assert result['certified'] == result['checked'] == 10
    assert result['resampled'] >= 0


def test_sharpness_records_uncertified(monkeypatch):
    import orliczwidths.suites as suites

    monkeypatch.setattr(suites, 'SHARPNESS_ATTEMPTS', 0)

    node = theorem3_sharpness(0, instances=2, points=5)
    result = node.run()

    assert not result['passed']
    assert result['certified'] == 0 and result['failures'] == 2
    assert 'no certified family' in node.variables['counterexamples'][0]['reason']


def test_suites_are_deterministic():
    first = lp_agreement(11, vectors=5).run()
    second = lp_agreement(11, vectors=5).run()

    assert first == second


@pytest.mark.parametrize('name', sorted(CHECKS))
def test_inequality_suite(name):
    result = inequality_suite(name, 0, 20).run()

    assert result == dict(passed=True, checked=20, failures=0)


def test_verify_graph_names():
    root = verify_graph(3, 10)

    assert isinstance(root, Root)
    assert root.name == 'verify.3'
    assert sorted(node.name for node in root.dependencies) == sorted([
        'verify.lp_agreement.3', 'verify.theorem1.3', 'verify.corollary1.3',
        'verify.theorem2.3', 'verify.theorem3_worked',
        'verify.theorem3_sharpness.3',
    ] + [ 'verify.inequality.%s.3' % name for name in CHECKS ])


def test_report_is_saved(tmp_path):
    filename = tmp_path / 'report.json'
    root = Root('verify.0', theorem3_worked(), inequality_suite('slope', 0, 5))

    results = root.run(filename=str(filename))
    report = { entry['name']: entry for entry in json.loads(filename.read_text()) }

    assert set(results) == { 'verify.theorem3_worked', 'verify.inequality.slope.0' }
    assert report['verify.theorem3_worked']['result']['passed']
    assert report['verify.theorem3_worked']['state'] == 'finished'
    assert 'result' not in report['verify.0']


def test_table_rows_sorted():
    lam = WeightSequence.power_decay(1, 16)
    M = OrliczFunction.power(2)

    root = table_graph(
        ('d_m', 'D_n', 'E_char_set'), lam, M, n_range=(0, 1, 2), m_range=(2, 0, 1)
    )
    rows = table_rows(root)

    assert [ (r['quantity'], r['order']) for r in rows ] == [
        ('D_n', 0), ('D_n', 1), ('D_n', 2),
        ('E_char_set', 1), ('E_char_set', 2),
        ('d_m', 0), ('d_m', 1), ('d_m', 2),
    ]

    values = { (r['quantity'], r['order']): r['value'] for r in rows }

    assert values['D_n', 2] == pytest.approx(1 / 3)
    assert values['E_char_set', 2] == pytest.approx(1 / 2)
    assert values['d_m', 2] == pytest.approx(1 / 3)
    assert all(r['certified'] for r in rows)


def test_table_sigma_rows():
    lam = WeightSequence.geometric(0.5, 8)

    root = table_graph(('sigma',), lam, OrliczFunction.power(1), p=1, n_range=(1,))
    (row,) = table_rows(root)

    assert row['value'] == pytest.approx(1 / 6, abs=1e-12)
    assert row['witness'] == 's*=2'
    assert row['certified'] is True
