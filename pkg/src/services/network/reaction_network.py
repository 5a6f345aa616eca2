"""Euclidean embedded reaction graphs: linkage classes, stoichiometric space, deficiency."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from src.core.config import settings
from src.core.exceptions import (
    InternalConsistencyError,
    NetworkValidationError,
    SingularTransformError,
)

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Complex:
    """A vertex of the reaction graph: species exponents y_i."""

    coords: Tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        if not all(np.isfinite(coords)):
            raise NetworkValidationError(f"Complex has non-finite coordinates: {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def dimension(self) -> int:
        return len(self.coords)


@dataclass(frozen=True, eq=False)
class ReactionNetwork:
    """Directed graph with vertices embedded in species space.

    complexes is an m x n array (row i holds y_i); edges are (source, target)
    vertex indices, 0-based, in file order. Instances are immutable.
    """

    species: Tuple[str, ...]
    complexes: np.ndarray
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        species = tuple(str(s) for s in self.species)
        complexes = np.array(self.complexes, dtype=float)
        if complexes.ndim == 1 and complexes.size == 0:
            complexes = complexes.reshape(0, len(species))
        if complexes.ndim != 2:
            raise NetworkValidationError("complexes must be a list of coordinate vectors")
        m, n = complexes.shape
        if m == 0:
            raise NetworkValidationError("network has no complexes")
        if n != len(species):
            raise NetworkValidationError(
                f"dimension mismatch: complexes have {n} coordinates but {len(species)} species"
            )
        if len(set(species)) != len(species):
            raise NetworkValidationError(f"duplicate species names: {species}")
        if not np.all(np.isfinite(complexes)):
            raise NetworkValidationError("complex coordinates must be finite")
        seen = {}
        for i, row in enumerate(complexes):
            key = tuple(row.tolist())
            if key in seen:
                raise NetworkValidationError(
                    f"duplicate complex {key} at indices {seen[key]} and {i}"
                )
            seen[key] = i

        edges = tuple((int(i), int(j)) for i, j in self.edges)
        seen_edges = set()
        for i, j in edges:
            if not (0 <= i < m and 0 <= j < m):
                raise NetworkValidationError(f"edge ({i}, {j}) references a missing vertex")
            if i == j:
                raise NetworkValidationError(f"self-loop at vertex {i}")
            if (i, j) in seen_edges:
                raise NetworkValidationError(f"duplicate edge ({i}, {j})")
            seen_edges.add((i, j))

        object.__setattr__(self, "species", species)
        object.__setattr__(self, "complexes", _frozen(complexes))
        object.__setattr__(self, "edges", edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReactionNetwork):
            return NotImplemented
        return (
            self.species == other.species
            and self.edges == other.edges
            and self.complexes.shape == other.complexes.shape
            and bool(np.array_equal(self.complexes, other.complexes))
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def n(self) -> int:
        """Number of species."""
        return int(self.complexes.shape[1])

    @property
    def m(self) -> int:
        """Number of complexes (vertices)."""
        return int(self.complexes.shape[0])

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def sources(self) -> np.ndarray:
        return np.array([i for i, _ in self.edges], dtype=int)

    @property
    def targets(self) -> np.ndarray:
        return np.array([j for _, j in self.edges], dtype=int)

    def to_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.m))
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def build(
        cls,
        species: Sequence[str],
        complexes: Iterable[Complex | Sequence[float]],
        edges: Iterable[Sequence[int]],
    ) -> "ReactionNetwork":
        """Construct from plain Python values, validating every complex."""
        rows = [c if isinstance(c, Complex) else Complex(tuple(c)) for c in complexes]
        for c in rows:
            if c.dimension != len(species):
                raise NetworkValidationError(
                    f"dimension mismatch: complex {c.coords} vs {len(species)} species"
                )
        matrix = np.array([c.coords for c in rows], dtype=float).reshape(len(rows), len(species))
        return cls(tuple(species), matrix, tuple(tuple(e) for e in edges))


@dataclass(frozen=True, eq=False)
class LinkageDecomposition:
    """Undirected connected components of the reaction graph."""

    component_id: np.ndarray
    l: int

    def members(self, component: int) -> List[int]:
        return [int(v) for v in np.flatnonzero(self.component_id == component)]

    @property
    def classes(self) -> List[List[int]]:
        return [self.members(c) for c in range(self.l)]


@dataclass(frozen=True, eq=False)
class StoichiometricSpace:
    """Orthonormal basis (n x s) of the span of all reaction vectors."""

    basis: np.ndarray
    s: int

    @property
    def n(self) -> int:
        return int(self.basis.shape[0])

    def orthogonal_complement(self) -> np.ndarray:
        """Orthonormal basis of S-perp, shape n x (n - s)."""
        if self.s == 0:
            return np.eye(self.n)
        if self.s == self.n:
            return np.zeros((self.n, 0))
        return scipy.linalg.null_space(self.basis.T)

    def perp_projector(self) -> np.ndarray:
        return np.eye(self.n) - self.basis @ self.basis.T


@dataclass(frozen=True, eq=False)
class RateVector:
    """One strictly positive rate per edge."""

    k: np.ndarray

    def __post_init__(self) -> None:
        k = np.array(self.k, dtype=float).reshape(-1)
        if not np.all(np.isfinite(k)) or np.any(k <= 0):
            raise NetworkValidationError("rates must be finite and strictly positive")
        object.__setattr__(self, "k", _frozen(k))

    def __len__(self) -> int:
        return int(self.k.size)

    def scaled(self, factor: float) -> "RateVector":
        return RateVector(self.k * factor)


def numerical_rank(matrix: np.ndarray, rel_tol: float | None = None) -> int:
    """Rank from singular values above rel_tol times the largest."""
    if matrix.size == 0:
        return 0
    rel_tol = settings.RANK_TOL if rel_tol is None else rel_tol
    singular_values = scipy.linalg.svd(matrix, compute_uv=False)
    if singular_values.size == 0 or singular_values[0] == 0.0:
        return 0
    return int(np.sum(singular_values > rel_tol * singular_values[0]))


def complex_matrix(net: ReactionNetwork) -> np.ndarray:
    """The n x m matrix Y whose columns are the complexes."""
    return np.array(net.complexes.T)


def reaction_vectors(net: ReactionNetwork) -> np.ndarray:
    """|E| x n matrix with rows y_j - y_i, one per edge i -> j."""
    if net.num_edges == 0:
        return np.zeros((0, net.n))
    return net.complexes[net.targets] - net.complexes[net.sources]


def linkage_classes(net: ReactionNetwork) -> LinkageDecomposition:
    graph = nx.Graph()
    graph.add_nodes_from(range(net.m))
    graph.add_edges_from(net.edges)
    # ids ordered by smallest member so the labelling is deterministic
    components = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    component_id = np.empty(net.m, dtype=int)
    for cid, members in enumerate(components):
        component_id[members] = cid
    return LinkageDecomposition(_frozen(component_id), len(components))


def is_weakly_reversible(net: ReactionNetwork) -> bool:
    """True iff every linkage class is strongly connected."""
    digraph = net.to_digraph()
    for members in linkage_classes(net).classes:
        if not nx.is_strongly_connected(digraph.subgraph(members)):
            return False
    return True


def stoichiometric_space(net: ReactionNetwork) -> StoichiometricSpace:
    vectors = reaction_vectors(net)
    if vectors.shape[0] == 0:
        return StoichiometricSpace(_frozen(np.zeros((net.n, 0))), 0)
    u, singular_values, _ = scipy.linalg.svd(vectors.T, full_matrices=False)
    if singular_values[0] == 0.0:
        return StoichiometricSpace(_frozen(np.zeros((net.n, 0))), 0)
    s = int(np.sum(singular_values > settings.RANK_TOL * singular_values[0]))
    logger.debug(f"stoichiometric rank {s} from singular values {singular_values}")
    return StoichiometricSpace(_frozen(np.array(u[:, :s])), s)


def deficiency(net: ReactionNetwork) -> int:
    """delta = m - s - l."""
    s = stoichiometric_space(net).s
    l = linkage_classes(net).l
    delta = net.m - s - l
    if delta < 0:
        raise InternalConsistencyError(f"negative deficiency m={net.m}, s={s}, l={l}")
    return delta


def affine_transform(net: ReactionNetwork, A: ArrayLike, b: ArrayLike) -> ReactionNetwork:
    """Network with complexes A @ y_i + b and the same edge list."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).reshape(-1)
    if A.shape != (net.n, net.n):
        raise SingularTransformError(
            f"transform must be square {net.n}x{net.n}, got {A.shape}"
        )
    if b.shape != (net.n,):
        raise SingularTransformError(f"offset must have {net.n} entries, got {b.shape[0]}")
    cond = np.linalg.cond(A) if A.size else 1.0
    if not np.isfinite(cond) or cond > settings.AFFINE_COND_LIMIT:
        raise SingularTransformError(f"transform is singular (condition number {cond:.3g})")
    transformed = net.complexes @ A.T + b
    try:
        return ReactionNetwork(net.species, transformed, net.edges)
    except NetworkValidationError as e:
        raise SingularTransformError(f"transformed complexes collide: {e}") from e
