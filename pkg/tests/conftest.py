from __future__ import annotations

import pytest

from vecflow.graphs import (
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    petersen_graph,
    wheel_graph,
)

from corpusgen import bridgeless_atlas, bridgeless_cubic_corpus


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def k5():
    return complete_graph(5)


@pytest.fixture(scope="session")
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture(scope="session")
def petersen():
    return petersen_graph()


@pytest.fixture(scope="session")
def q3():
    return cube_graph()


@pytest.fixture(scope="session")
def c4():
    return cycle_graph(4)


@pytest.fixture(scope="session")
def w5():
    return wheel_graph(5)


@pytest.fixture(scope="session")
def atlas_corpus():
    """Every bridgeless graph on <= 7 vertices."""
    return bridgeless_atlas()


@pytest.fixture(scope="session")
def cubic_corpus():
    """Every connected bridgeless cubic graph on <= 10 vertices."""
    return bridgeless_cubic_corpus()


@pytest.fixture(scope="session")
def bridgeless_corpus(atlas_corpus, cubic_corpus):
    """Union corpus: <= 7-vertex bridgeless plus 8/10-vertex bridgeless cubic."""
    return atlas_corpus + [g for g in cubic_corpus if g.n > 7]
