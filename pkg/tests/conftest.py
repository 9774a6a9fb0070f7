import numpy as np
import pytest

from nlasso import NLassoProblem, build_graph
from nlasso.generators import chain_graph

CHAIN_ALPHA = 1.0 / 200.0
CHAIN_LAMBDA = 2.0 / 10.0


@pytest.fixture(scope="session")
def weighted_chain():
    """100-node chain, weight 5/4 everywhere except edge {4, 5} at 1."""
    return chain_graph(100, 5.0 / 4.0, [(4, 1.0)])


@pytest.fixture(scope="session")
def chain_problem(weighted_chain):
    return NLassoProblem(weighted_chain, [1], CHAIN_ALPHA, CHAIN_LAMBDA)


@pytest.fixture
def house_graph():
    """5 nodes, 6 edges, mixed weights; small enough to reason by hand."""
    return build_graph(5, [
        (1, 2, 1.3), (1, 3, 0.7), (2, 3, 2.0),
        (2, 4, 1.1), (3, 5, 0.6), (4, 5, 1.9),
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
