import numpy as np
import pytest

from shepqi.grid import SampledSignal
from shepqi.quasi_interp import build
from shepqi.testfns import TEST_FUNCTIONS, sample_on_grid


def equispaced_signal(n, a=-1.0, b=1.0, fn=None):
    nodes = np.linspace(a, b, n + 1)
    values = np.zeros(n + 1) if fn is None else fn(nodes)
    return SampledSignal(nodes, values)


@pytest.fixture(scope="session")
def q_f1_paper():
    """f1 on 1025 equispaced nodes, degree 3, mu 4, 10 blend points."""
    signal, gaps = sample_on_grid("f1", 1024)
    return build(signal, gaps, degree=3, mu=4, n_blend=10)


@pytest.fixture(scope="session")
def f1_fn():
    return TEST_FUNCTIONS["f1"].fn
