import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from dirclust import validate_network  # noqa: E402
from dirclust.network import Network  # noqa: E402

INF = float("inf")
GRID = (0.5, 1.0, 2.0, 3.0, 4.0, 5.0)

# Three nodes where reciprocal and nonreciprocal clustering differ.
GOLDEN = [[0, 0.5, 4], [2, 0, 0.5], [1, 3, 0]]
# Minimum loop cost 1 (a->b->c->a), separation 0.5.
LOOPNET = [[0, 0.5, 3], [2, 0, 1], [1, 3, 0]]
# Ultrametric with two pairs merging at 2 and 4, then all at 6.
NESTED = [[0, 2, 6, 6], [2, 0, 6, 6], [6, 6, 0, 4], [6, 6, 4, 0]]
# A dissimilarity-reducing map x_i -> y_i between two three-node networks.
MAP_SRC = [[0, 1, 3], [2, 0, 2], [2, 3, 0]]
MAP_DST = [[0, 0.5, 1], [1, 0, 0.5], [0.5, 1, 0]]


@pytest.fixture
def golden():
    return validate_network(["a", "b", "c"], GOLDEN)


@pytest.fixture
def loopnet():
    return validate_network(["a", "b", "c"], LOOPNET)


@pytest.fixture
def mapped():
    return (
        validate_network(["x1", "x2", "x3"], MAP_SRC),
        validate_network(["y1", "y2", "y3"], MAP_DST),
    )


@st.composite
def networks(draw, min_n=1, max_n=6, allow_inf=True, symmetric=False):
    n = draw(st.integers(min_n, max_n))
    values = st.sampled_from(GRID + ((INF,) if allow_inf else ()))
    a = np.array(draw(st.lists(values, min_size=n * n, max_size=n * n)), dtype=float).reshape(n, n)
    if symmetric:
        a = np.triu(a, 1)
        a = a + a.T
    np.fill_diagonal(a, 0.0)
    return validate_network([f"v{i}" for i in range(n)], a)


def assert_net_equal(a: Network, b: Network):
    assert a.nodes == b.nodes
    np.testing.assert_array_equal(a.dissim, b.dissim)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance summary")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
