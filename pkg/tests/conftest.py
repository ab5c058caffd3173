import numpy as np
import pytest
from hypothesis import strategies as st

from orliczwidths.charseq import WeightSequence
from orliczwidths.oracles import builtin_gauges
from orliczwidths.orlicz import OrliczFunction


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def staircase():
    """ The weights with two ties used throughout the width examples """

    return WeightSequence((1, 1, 0.5, 0.5, 0.5, 0.25, 0.125))


@pytest.fixture
def harmonic():
    """ lambda_k = 1/k, k = 1..10 """

    return WeightSequence.power_decay(1, 10)


@pytest.fixture(params=builtin_gauges(), ids=lambda M: M.label)
def gauge(request):
    return request.param


@pytest.fixture
def spline_file(tmp_path):
    path = tmp_path / 'gauge.csv'
    path.write_text('0,0\n1,1\n2,3\n4,9\n')
    return path


# Strategies

gauges = st.sampled_from(builtin_gauges())

powers = st.sampled_from((1.0, 1.5, 2.0, 3.0))

entries = st.floats(
    min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False
)

vectors = st.lists(entries, min_size=1, max_size=16).filter(
    lambda x: any(abs(v) > 1e-6 for v in x)
)

# Weights from a few levels, so that ties are common
weight_lists = st.lists(
    st.sampled_from((1.0, 0.75, 0.5, 0.3, 0.25, 0.125, 0.01)),
    min_size=1, max_size=12
)


def power(p):
    return OrliczFunction.power(p)
