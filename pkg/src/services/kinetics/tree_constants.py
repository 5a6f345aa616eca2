"""Matrix-Tree constants K_i: principal minors of A_k and explicit in-tree sums.

An i-tree is a spanning tree of i's linkage class with every edge oriented
toward i (each non-root vertex keeps exactly one outgoing edge).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np
import scipy.linalg

from src.core.config import settings
from src.core.exceptions import (
    InternalConsistencyError,
    NotWeaklyReversibleError,
    TreeEnumerationError,
)
from src.services.kinetics.mass_action import MassActionSystem, laplacian
from src.services.network.reaction_network import ReactionNetwork, linkage_classes

logger = logging.getLogger(__name__)

InTree = Tuple[int, ...]  # sorted edge indices


@dataclass(frozen=True, eq=False)
class TreeConstantVector:
    """One tree constant per vertex."""

    K: np.ndarray

    def __post_init__(self) -> None:
        K = np.array(self.K, dtype=float).reshape(-1)
        K.setflags(write=False)
        object.__setattr__(self, "K", K)

    def __len__(self) -> int:
        return int(self.K.size)

    @property
    def log(self) -> np.ndarray:
        return np.log(self.K)


def _require_strongly_connected_classes(net: ReactionNetwork) -> List[List[int]]:
    digraph = net.to_digraph()
    classes = linkage_classes(net).classes
    for members in classes:
        if not nx.is_strongly_connected(digraph.subgraph(members)):
            raise NotWeaklyReversibleError(
                f"linkage class {members} is not strongly connected; some tree constant is 0"
            )
    return classes


def _lu_determinant(matrix: np.ndarray) -> float:
    """Determinant via LU with partial pivoting."""
    if matrix.shape[0] == 0:
        return 1.0
    lu, piv = scipy.linalg.lu_factor(matrix, check_finite=True)
    swaps = int(np.sum(piv != np.arange(piv.size)))
    diagonal = np.diag(lu)
    sign = (-1.0) ** swaps * np.prod(np.sign(diagonal))
    if sign == 0:
        return 0.0
    return float(sign * np.exp(np.sum(np.log(np.abs(diagonal)))))


def tree_constants_minor(sys: MassActionSystem) -> TreeConstantVector:
    """K_i = (-1)^(m_c - 1) det(M_i), block by block over linkage classes.

    Raises:
        NotWeaklyReversibleError: If a linkage class is not strongly connected.
        InternalConsistencyError: If a computed constant is not strictly positive.
    """
    net = sys.net
    classes = _require_strongly_connected_classes(net)
    A = laplacian(sys)
    K = np.empty(net.m)
    for members in classes:
        block = A[np.ix_(members, members)]
        size = len(members)
        for position, vertex in enumerate(members):
            minor = np.delete(np.delete(block, position, axis=0), position, axis=1)
            K[vertex] = (-1.0) ** (size - 1) * _lu_determinant(minor)
    if not np.all(np.isfinite(K)) or np.any(K <= 0):
        raise InternalConsistencyError(f"non-positive tree constants from minors: {K}")
    return TreeConstantVector(K)


def _in_trees(
    members: List[int],
    root: int,
    out_edges: Dict[int, List[Tuple[int, int]]],
) -> Iterator[InTree]:
    """Backtracking over one outgoing edge per non-root vertex, pruning cycles."""
    others = [v for v in members if v != root]
    parent: Dict[int, int] = {}
    chosen: List[int] = []

    def closes_cycle(start: int) -> bool:
        v = parent[start]
        while v != root and v in parent:
            if v == start:
                return True
            v = parent[v]
        return False

    def extend(depth: int) -> Iterator[InTree]:
        if depth == len(others):
            yield tuple(sorted(chosen))
            return
        vertex = others[depth]
        for edge_index, target in out_edges[vertex]:
            parent[vertex] = target
            if not closes_cycle(vertex):
                chosen.append(edge_index)
                yield from extend(depth + 1)
                chosen.pop()
            del parent[vertex]

    yield from extend(0)


def enumerate_in_trees(net: ReactionNetwork, root: int) -> List[InTree]:
    """All spanning in-trees of root's linkage class, as sorted edge-index tuples.

    Raises:
        TreeEnumerationError: If the class exceeds MAX_TREE_CLASS_SIZE vertices or
            some vertex of the class cannot reach the root.
    """
    if not 0 <= root < net.m:
        raise TreeEnumerationError(f"root {root} out of range")
    decomposition = linkage_classes(net)
    members = decomposition.members(int(decomposition.component_id[root]))
    if len(members) > settings.MAX_TREE_CLASS_SIZE:
        raise TreeEnumerationError(
            f"linkage class of vertex {root} has {len(members)} vertices; "
            f"enumeration is limited to {settings.MAX_TREE_CLASS_SIZE}"
        )
    digraph = net.to_digraph()
    unreachable = set(members) - nx.ancestors(digraph, root) - {root}
    if unreachable:
        raise TreeEnumerationError(f"vertices {sorted(unreachable)} cannot reach root {root}")

    out_edges: Dict[int, List[Tuple[int, int]]] = {v: [] for v in members}
    for index, (i, j) in enumerate(net.edges):
        if i in out_edges:
            out_edges[i].append((index, j))
    trees = list(_in_trees(members, root, out_edges))
    logger.debug(f"{len(trees)} in-trees rooted at vertex {root}")
    return trees


def tree_constants_enum(
    sys: MassActionSystem, trees: Optional[Dict[int, List[InTree]]] = None
) -> TreeConstantVector:
    """K_i as the sum over i-trees of the product of edge rates."""
    net = sys.net
    _require_strongly_connected_classes(net)
    rates = sys.rates
    K = np.empty(net.m)
    for vertex in range(net.m):
        vertex_trees = trees[vertex] if trees is not None else enumerate_in_trees(net, vertex)
        K[vertex] = sum(float(np.prod(rates[list(tree)])) for tree in vertex_trees)
    return TreeConstantVector(K)


def kernel_residual(sys: MassActionSystem, K: TreeConstantVector) -> float:
    """max |A_k K| relative to max |A_k diag(K)|."""
    A = laplacian(sys)
    scaled = np.abs(A * K.K[np.newaxis, :])
    scale = np.max(scaled, initial=0.0)
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(A @ K.K)) / scale)
