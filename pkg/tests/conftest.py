import random

import pytest

from clusterkit.graphs import AdjacencyMatrix


@pytest.fixture
def rng():
    return random.Random(0xC1A5)


def adjacency_from_dense(dense) -> AdjacencyMatrix:
    return AdjacencyMatrix.from_dense(dense)
