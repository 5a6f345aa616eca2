"""Shared fixtures: canonical networks and seeded random generators."""

import itertools
from typing import List, Tuple

import numpy as np
import pytest

from src.services.network import ReactionNetwork, example_network


def random_strongly_connected_edges(
    m: int, rng: np.random.Generator, extra: float = 0.3
) -> List[Tuple[int, int]]:
    """A Hamiltonian cycle in random order plus each remaining ordered pair with prob extra."""
    order = rng.permutation(m)
    edges = {(int(order[i]), int(order[(i + 1) % m])) for i in range(m)} if m > 1 else set()
    for i, j in itertools.permutations(range(m), 2):
        if (i, j) not in edges and rng.random() < extra:
            edges.add((i, j))
    return sorted(edges)


def random_weakly_reversible_network(
    rng: np.random.Generator, n_species: int = 3, max_class: int = 4, max_classes: int = 3
) -> ReactionNetwork:
    """Disjoint strongly connected classes on distinct random lattice points."""
    class_count = int(rng.integers(1, max_classes + 1))
    sizes = [int(rng.integers(1, max_class + 1)) for _ in range(class_count)]
    m = sum(sizes)
    lattice = np.array(list(itertools.product(range(3), repeat=n_species)))
    points = lattice[rng.choice(len(lattice), size=m, replace=False)]
    edges: List[Tuple[int, int]] = []
    offset = 0
    for size in sizes:
        edges.extend(
            (i + offset, j + offset) for i, j in random_strongly_connected_edges(size, rng)
        )
        offset += size
    species = [f"X{i + 1}" for i in range(n_species)]
    return ReactionNetwork.build(species, points.tolist(), edges)


def log_uniform_rates(rng: np.random.Generator, count: int, low=1e-2, high=1e2) -> np.ndarray:
    return np.exp(rng.uniform(np.log(low), np.log(high), count))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def triangle() -> ReactionNetwork:
    return example_network("triangle")


@pytest.fixture
def square_cycle() -> ReactionNetwork:
    return example_network("square-cycle")


@pytest.fixture
def line_cycle() -> ReactionNetwork:
    return example_network("line-cycle")


@pytest.fixture
def bidirected_triangle() -> ReactionNetwork:
    return example_network("bidirected-triangle")


@pytest.fixture
def reversible_pair() -> ReactionNetwork:
    return example_network("reversible-pair")


@pytest.fixture
def two_class_network() -> ReactionNetwork:
    """Square 4-cycle plus 2X1 <-> 2X2: m=6, s=2, l=2, deficiency 2."""
    return ReactionNetwork.build(
        ["X1", "X2"],
        [[0, 0], [1, 0], [1, 1], [0, 1], [2, 0], [0, 2]],
        [[0, 1], [1, 2], [2, 3], [3, 0], [4, 5], [5, 4]],
    )


@pytest.fixture
def one_way_edge() -> ReactionNetwork:
    return ReactionNetwork.build(["X1", "X2"], [[1, 0], [0, 1]], [[0, 1]])
