import pytest
from hypothesis import strategies as st

from data.generators import gen_gnp
from data.models import Graph


@pytest.fixture
def k3():
    return Graph.complete(3)


@pytest.fixture
def k4():
    return Graph.complete(4)


@pytest.fixture
def path4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def gnp16():
    return gen_gnp(16, 0.5, seed=7)


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, kept in zip(pairs, keep) if kept])
