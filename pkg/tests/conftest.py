import pytest

from nepoll import LabeledGraph, build_graph


@pytest.fixture
def star():
    """K_{1,3}: center 0, leaves 1..3."""
    return build_graph([(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def star_lg(star):
    return LabeledGraph(star, [1, 0, 0, 0])


@pytest.fixture
def k3():
    return build_graph([(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def k3_lg(k3):
    return LabeledGraph(k3, [1, 0, 0])


@pytest.fixture
def c4():
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def path3():
    return build_graph([(0, 1), (1, 2)])


@pytest.fixture
def star_chord():
    """K_{1,3} plus an edge between two leaves: connected, non-bipartite."""
    return build_graph([(0, 1), (0, 2), (0, 3), (1, 2)])


@pytest.fixture
def two_edges():
    return build_graph([(0, 1), (2, 3)])
