"""Membership in the toric locus V(G) and complex balanced equilibria.

A rate vector k is in V(G) iff the binomial system
K_i x^{y_j} = K_j x^{y_i} (i, j in one linkage class) has a positive solution;
in log coordinates that is the linear system (y_j - y_i) . log x = log K_j - log K_i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from src.core.config import settings
from src.core.exceptions import ConvergenceError, NotInToricLocusError
from src.services.kinetics.mass_action import (
    MassActionSystem,
    StateVector,
    as_state,
    is_complex_balanced_at,
    psi,
)
from src.services.kinetics.tree_constants import TreeConstantVector, tree_constants_minor
from src.services.network.reaction_network import (
    RateVector,
    ReactionNetwork,
    StoichiometricSpace,
    is_weakly_reversible,
    linkage_classes,
    numerical_rank,
    stoichiometric_space,
)

logger = logging.getLogger(__name__)


class MembershipReason(str, Enum):
    """Why a membership decision came out the way it did."""

    NOT_WEAKLY_REVERSIBLE = "not-weakly-reversible"
    INCONSISTENT = "inconsistent-log-system"
    OK = "ok"


@dataclass(frozen=True, eq=False)
class EquilibriumPoint:
    """Strictly positive state, tagged complex balanced by whoever built it."""

    x: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", StateVector(self.x).x)

    def to_list(self) -> List[float]:
        return self.x.tolist()


@dataclass(frozen=True, eq=False)
class EquilibriumSetDescription:
    """All complex balanced equilibria: log x in base_log + span(normal_space)."""

    base_log: np.ndarray
    normal_space: np.ndarray

    def point(self, coefficients: ArrayLike) -> EquilibriumPoint:
        coefficients = np.asarray(coefficients, dtype=float).reshape(-1)
        return EquilibriumPoint(np.exp(self.base_log + self.normal_space @ coefficients))


@dataclass(frozen=True, eq=False)
class MembershipReport:
    """Result of a toric locus membership test."""

    member: bool
    residual: float
    reason: MembershipReason
    witness: Optional[EquilibriumPoint] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "member": self.member,
            "residual": self.residual,
            "witness": self.witness.to_list() if self.witness is not None else None,
            "reason": self.reason.value,
        }


def spanning_pairs(net: ReactionNetwork) -> List[Tuple[int, int]]:
    """Edges of a breadth-first spanning tree of every linkage class."""
    graph = nx.Graph()
    graph.add_nodes_from(range(net.m))
    graph.add_edges_from(net.edges)
    pairs: List[Tuple[int, int]] = []
    for members in linkage_classes(net).classes:
        pairs.extend((int(i), int(j)) for i, j in nx.bfs_edges(graph, members[0]))
    return pairs


def _log_k(K: TreeConstantVector | ArrayLike) -> np.ndarray:
    values = K.K if isinstance(K, TreeConstantVector) else np.asarray(K, dtype=float)
    return np.log(values)


def log_linear_system(
    net: ReactionNetwork, K: TreeConstantVector | ArrayLike
) -> Tuple[np.ndarray, np.ndarray]:
    """Rows (y_j - y_i) and right-hand sides log K_j - log K_i over spanning pairs."""
    log_k = _log_k(K)
    pairs = spanning_pairs(net)
    if not pairs:
        return np.zeros((0, net.n)), np.zeros(0)
    i, j = np.array(pairs).T
    return net.complexes[j] - net.complexes[i], log_k[j] - log_k[i]


def binomial_gap(
    net: ReactionNetwork, K: TreeConstantVector | ArrayLike, log_x: ArrayLike
) -> float:
    """Largest |K_i x^{y_j} - K_j x^{y_i}| / (K_i x^{y_j} + K_j x^{y_i}) over same-class pairs.

    With w_i = log K_i - y_i . log x the pair gap is tanh(|w_i - w_j| / 2), so the
    maximum over a class comes from its extreme w values.
    """
    w = _log_k(K) - net.complexes @ np.asarray(log_x, dtype=float)
    gap = 0.0
    for members in linkage_classes(net).classes:
        spread = float(np.max(w[members]) - np.min(w[members]))
        gap = max(gap, float(np.tanh(spread / 2.0)))
    return gap


def binomial_constraint_rank(net: ReactionNetwork) -> int:
    """Number of independent binomial conditions on log K: (m - l) - rank of the rows."""
    rows, _ = log_linear_system(net, np.ones(net.m))
    return rows.shape[0] - numerical_rank(rows)


def toric_membership(sys: MassActionSystem, tol: Optional[float] = None) -> MembershipReport:
    """Decide whether sys.k lies in V(G).

    Non-weakly-reversible networks are reported as non-members instead of raising.
    """
    tol = settings.DEFAULT_TOL if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    net = sys.net
    if not is_weakly_reversible(net):
        return MembershipReport(
            member=False, residual=1.0, reason=MembershipReason.NOT_WEAKLY_REVERSIBLE
        )

    K = tree_constants_minor(sys)
    rows, rhs = log_linear_system(net, K)
    if rows.shape[0]:
        log_x, _, _, _ = scipy.linalg.lstsq(rows, rhs, lapack_driver="gelsy")
    else:
        log_x = np.zeros(net.n)
    residual = binomial_gap(net, K, log_x)
    member = residual <= tol
    logger.debug(f"membership residual {residual:.3e} (tol {tol:.1e}) -> member={member}")
    if not member:
        return MembershipReport(
            member=False, residual=residual, reason=MembershipReason.INCONSISTENT
        )

    witness = EquilibriumPoint(np.exp(log_x))
    if not is_complex_balanced_at(sys, witness.x, max(tol, settings.DEFAULT_TOL)):
        # a gap just under tol can still leave vertex imbalance above it
        logger.warning(
            f"membership witness fails the complex balance check (gap {residual:.3e}); "
            f"reporting non-member"
        )
        return MembershipReport(
            member=False, residual=residual, reason=MembershipReason.INCONSISTENT
        )
    return MembershipReport(
        member=True, residual=residual, reason=MembershipReason.OK, witness=witness
    )


def equilibrium_set(
    sys: MassActionSystem, tol: Optional[float] = None
) -> EquilibriumSetDescription:
    report = toric_membership(sys, tol)
    if not report.member:
        raise NotInToricLocusError(f"rates are not in the toric locus ({report.reason.value})")
    normal = stoichiometric_space(sys.net).orthogonal_complement()
    return EquilibriumSetDescription(np.log(report.witness.x), normal)


def _entropy(x: np.ndarray, log_star: np.ndarray) -> float:
    return float(np.sum(x * (np.log(x) - log_star) - x))


def birch_projection(
    x_star: EquilibriumPoint | ArrayLike,
    x0: StateVector | ArrayLike,
    S: StoichiometricSpace,
) -> EquilibriumPoint:
    """Unique x in (x0 + S) with log x - log x_star in S-perp.

    Damped Newton on F(u) = B^T (log(x0 + B u) - log x_star), which is the gradient
    of a strictly convex function of u; the line search keeps x0 + B u positive.

    Raises:
        ConvergenceError: After NEWTON_MAX_ITER iterations, with the last iterate.
    """
    star = x_star.x if isinstance(x_star, EquilibriumPoint) else as_state(x_star, S.n)
    x0 = as_state(x0, S.n)
    if S.s == 0:
        return EquilibriumPoint(x0)
    if S.s == S.n:
        return EquilibriumPoint(star)

    B = S.basis
    log_star = np.log(star)
    target = 1e-12 * (1.0 + float(np.linalg.norm(log_star)))
    u = np.zeros(S.s)
    x = np.array(x0)
    for iteration in range(settings.NEWTON_MAX_ITER):
        x = x0 + B @ u
        F = B.T @ (np.log(x) - log_star)
        norm_f = float(np.linalg.norm(F))
        J = B.T @ (B / x[:, np.newaxis])
        du = scipy.linalg.solve(J, -F, assume_a="pos")
        if norm_f <= target:
            # one full Newton step past the tolerance, kept only if it does not get worse
            polished = x0 + B @ (u + du)
            if np.all(polished > 0):
                polished_f = float(np.linalg.norm(B.T @ (np.log(polished) - log_star)))
                if polished_f <= norm_f:
                    x = polished
            logger.debug(f"birch projection converged in {iteration} iterations")
            return EquilibriumPoint(x)
        f0 = _entropy(x, log_star)
        slope = float(F @ du)
        step = 1.0
        while step > 1e-16:
            trial = x0 + B @ (u + step * du)
            if np.all(trial > 0):
                f_trial = _entropy(trial, log_star)
                if f_trial <= f0 + 1e-4 * step * slope:
                    break
                trial_f = float(np.linalg.norm(B.T @ (np.log(trial) - log_star)))
                if trial_f < norm_f:
                    break
            step *= 0.5
        else:
            raise ConvergenceError("birch projection line search stalled", last_iterate=x)
        u = u + step * du
    raise ConvergenceError(
        f"birch projection did not converge in {settings.NEWTON_MAX_ITER} iterations",
        last_iterate=x0 + B @ u,
    )


def Q_map(
    sys: MassActionSystem, x0: StateVector | ArrayLike, tol: Optional[float] = None
) -> EquilibriumPoint:
    """The complex balanced equilibrium of sys inside (x0 + S) with positive entries.

    Raises:
        NotInToricLocusError: If sys.k is not in V(G).
    """
    report = toric_membership(sys, tol)
    if not report.member:
        raise NotInToricLocusError(
            f"rates are not in the toric locus "
            f"({report.reason.value}, residual {report.residual:.3e})"
        )
    return birch_projection(report.witness, x0, stoichiometric_space(sys.net))


def retarget_rates(
    sys: MassActionSystem,
    x_from: StateVector | ArrayLike,
    x_to: StateVector | ArrayLike,
) -> RateVector:
    """Rates k * x_from^y / x_to^y, keeping every edge flux unchanged."""
    net = sys.net
    ratio = psi(net, x_from) / psi(net, x_to)
    return RateVector(sys.rates * ratio[net.sources])
