"""Flux cone B(G), the homeomorphism phi between polyhedron x flux cone and V(G),
dimension counts, and explicit paths inside V(G).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from src.core.config import settings
from src.core.exceptions import (
    InternalConsistencyError,
    NetworkValidationError,
    NotWeaklyReversibleError,
    UnbalancedFluxError,
)
from src.services.kinetics.mass_action import MassActionSystem, StateVector, as_state, psi
from src.services.kinetics.tree_constants import tree_constants_minor
from src.services.locus.toric_locus import (
    EquilibriumPoint,
    Q_map,
    binomial_constraint_rank,
    birch_projection,
    toric_membership,
)
from src.services.network.reaction_network import (
    RateVector,
    ReactionNetwork,
    deficiency,
    is_weakly_reversible,
    linkage_classes,
    numerical_rank,
    stoichiometric_space,
)

logger = logging.getLogger(__name__)

# membership tolerance of the affine comparison when none is given
AFFINE_TOL = 1e-7
# relative size of the perturbation applied to members in near-member trials
NEAR_MEMBER_NUDGE = 1e-6


@dataclass(frozen=True, eq=False)
class FluxVector:
    """One positive flux per edge."""

    beta: np.ndarray

    def __post_init__(self) -> None:
        beta = np.array(self.beta, dtype=float).reshape(-1)
        if not np.all(np.isfinite(beta)) or np.any(beta <= 0):
            raise UnbalancedFluxError("fluxes must be finite and strictly positive")
        beta.setflags(write=False)
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True, eq=False)
class FluxConeBasis:
    """Interior point of B(G) plus an orthonormal basis of the balance kernel."""

    interior_point: FluxVector
    kernel_basis: np.ndarray

    @property
    def d(self) -> int:
        return int(self.kernel_basis.shape[1])


@dataclass(frozen=True, eq=False)
class ProductPoint:
    """A point of the polyhedron paired with a complex balanced flux."""

    x: EquilibriumPoint
    beta: FluxVector


@dataclass(frozen=True)
class DimensionsRecord:
    dim_polyhedron: int
    dim_flux_cone: int
    dim_V: int
    codim_V: int
    binomial_constraint_rank: int
    codim_consistent: bool

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "dim_polyhedron": self.dim_polyhedron,
            "dim_flux_cone": self.dim_flux_cone,
            "dim_V": self.dim_V,
            "codim_V": self.codim_V,
            "binomial_constraint_rank": self.binomial_constraint_rank,
            "codim_consistent": self.codim_consistent,
        }


class TrialKind(str, Enum):
    """How the rates of one affine trial were drawn."""

    MEMBER = "member"
    NEAR_MEMBER = "near-member"
    RANDOM = "random"


@dataclass(frozen=True)
class AffineTrial:
    index: int
    kind: TrialKind
    member_original: bool
    member_transformed: bool
    residual_original: float
    residual_transformed: float

    @property
    def constructed_member(self) -> bool:
        return self.kind is TrialKind.MEMBER

    @property
    def agree(self) -> bool:
        return self.member_original == self.member_transformed


@dataclass(frozen=True)
class AffineCheckResult:
    agree: bool
    trials: Tuple[AffineTrial, ...]


def balance_matrix(net: ReactionNetwork) -> np.ndarray:
    """m x |E|: +1 where the edge leaves the vertex, -1 where it enters."""
    M = np.zeros((net.m, net.num_edges))
    if net.num_edges:
        columns = np.arange(net.num_edges)
        M[net.sources, columns] = 1.0
        M[net.targets, columns] = -1.0
    return M


def flux_balance_residual(net: ReactionNetwork, beta: FluxVector | ArrayLike) -> float:
    """max |M beta| relative to max beta."""
    values = beta.beta if isinstance(beta, FluxVector) else np.asarray(beta, dtype=float)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(balance_matrix(net) @ values)) / np.max(np.abs(values)))


def flux_cone(net: ReactionNetwork, sys: Optional[MassActionSystem] = None) -> FluxConeBasis:
    """Kernel of the balance matrix and the interior point beta_e = k_e K_source(e).

    Raises:
        NotWeaklyReversibleError: If some linkage class is not strongly connected.
        InternalConsistencyError: If the numeric nullity differs from |E| - m + l.
    """
    if not is_weakly_reversible(net):
        raise NotWeaklyReversibleError("flux cone needs a weakly reversible network")
    if sys is None:
        sys = MassActionSystem(net, RateVector(np.ones(net.num_edges)))
    elif sys.net != net:
        raise NetworkValidationError("rates belong to a different network")

    if net.num_edges == 0:
        return FluxConeBasis(FluxVector(np.zeros(0)), np.zeros((0, 0)))
    expected = net.num_edges - net.m + linkage_classes(net).l
    kernel = scipy.linalg.null_space(balance_matrix(net), rcond=settings.RANK_TOL)
    if kernel.shape[1] != expected:
        raise InternalConsistencyError(
            f"flux kernel has dimension {kernel.shape[1]}, expected |E| - m + l = {expected}"
        )

    K = tree_constants_minor(sys)
    interior = FluxVector(sys.rates * K.K[net.sources])
    residual = flux_balance_residual(net, interior)
    if residual > settings.BALANCE_TOL:
        raise InternalConsistencyError(f"interior flux is unbalanced (residual {residual:.3e})")
    return FluxConeBasis(interior, kernel)


def sample_flux(basis: FluxConeBasis, coeffs: ArrayLike) -> Tuple[FluxVector, float]:
    """interior_point + kernel_basis @ coeffs, shrunk toward the interior point if needed.

    Returns:
        The sampled flux and the factor applied to coeffs (1.0 when nothing was shrunk).
    """
    coeffs = np.asarray(coeffs, dtype=float).reshape(-1)
    if coeffs.size != basis.d:
        raise ValueError(f"expected {basis.d} coefficients, got {coeffs.size}")
    interior = basis.interior_point.beta
    if interior.size == 0:
        return basis.interior_point, 1.0
    direction = basis.kernel_basis @ coeffs
    floor = 1e-9 * float(np.max(interior))

    factor = 1.0
    falling = direction < 0
    if np.any(falling):
        limits = (interior[falling] - floor) / -direction[falling]
        factor = max(0.0, min(1.0, float(np.min(limits))))
    if factor < 1.0:
        logger.debug(f"flux sample shrunk by factor {factor:.6g}")
    return FluxVector(interior + factor * direction), factor


def phi(
    x: EquilibriumPoint | StateVector | ArrayLike,
    beta: FluxVector | ArrayLike,
    net: ReactionNetwork,
) -> RateVector:
    """k_e = beta_e / x^{y_source(e)}; x is then a complex balanced equilibrium of k.

    Raises:
        UnbalancedFluxError: If beta violates vertex balance beyond BALANCE_TOL.
    """
    if not isinstance(beta, FluxVector):
        beta = FluxVector(beta)
    if beta.beta.size != net.num_edges:
        raise UnbalancedFluxError(
            f"flux has {beta.beta.size} entries, network has {net.num_edges} edges"
        )
    residual = flux_balance_residual(net, beta)
    if residual > settings.BALANCE_TOL:
        raise UnbalancedFluxError(f"flux is not complex balanced (residual {residual:.3e})")
    state = x.x if isinstance(x, EquilibriumPoint) else as_state(x, net.n)
    monomials = psi(net, state)
    return RateVector(beta.beta / monomials[net.sources])


def _flux_at(sys: MassActionSystem, x: np.ndarray) -> FluxVector:
    return FluxVector(sys.rates * psi(sys.net, x)[sys.net.sources])


def q_hat(
    sys: MassActionSystem, x0: StateVector | ArrayLike, tol: Optional[float] = None
) -> FluxVector:
    """Edge fluxes k_e Q(k)^{y_source(e)} at the complex balanced equilibrium in x0 + S."""
    return _flux_at(sys, Q_map(sys, x0, tol).x)


def phi_inverse(
    sys: MassActionSystem, x0: StateVector | ArrayLike, tol: Optional[float] = None
) -> ProductPoint:
    """(Q_map(sys, x0), q_hat(sys, x0)).

    Raises:
        NotInToricLocusError: If sys.k is not in V(G).
    """
    equilibrium = Q_map(sys, x0, tol)
    return ProductPoint(equilibrium, _flux_at(sys, equilibrium.x))


@dataclass(frozen=True, eq=False)
class ConnectingPath:
    """Rate vectors k(t) sampled on a uniform grid in t, with their membership residuals."""

    t: np.ndarray
    rates: Tuple[RateVector, ...]
    residuals: np.ndarray

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "t": self.t.tolist(),
            "k": [k.k.tolist() for k in self.rates],
            "residuals": self.residuals.tolist(),
        }


def connect_path(
    sys_a: MassActionSystem,
    sys_b: MassActionSystem,
    x0: StateVector | ArrayLike,
    steps: Optional[int] = None,
    tol: Optional[float] = None,
) -> ConnectingPath:
    """Path in V(G) from sys_a.k to sys_b.k through phi of a straight segment
    in polyhedron x flux cone.

    Raises:
        NetworkValidationError: If the two systems live on different networks.
        NotInToricLocusError: If either endpoint is not in V(G).
    """
    steps = settings.DEFAULT_PATH_STEPS if steps is None else steps
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if sys_a.net != sys_b.net:
        raise NetworkValidationError("path endpoints belong to different networks")
    net = sys_a.net
    start = phi_inverse(sys_a, x0, tol)
    end = phi_inverse(sys_b, x0, tol)

    grid = np.linspace(0.0, 1.0, steps)
    rates: List[RateVector] = []
    residuals = np.empty(steps)
    for index, t in enumerate(grid):
        x = (1.0 - t) * start.x.x + t * end.x.x
        beta = (1.0 - t) * start.beta.beta + t * end.beta.beta
        k = phi(x, beta, net)
        rates.append(k)
        residuals[index] = toric_membership(MassActionSystem(net, k), tol).residual
    logger.debug(f"path of {steps} samples, worst membership residual {residuals.max():.3e}")
    return ConnectingPath(grid, tuple(rates), residuals)


def naive_segment_midpoint(sys_a: MassActionSystem, sys_b: MassActionSystem) -> RateVector:
    if sys_a.net != sys_b.net:
        raise NetworkValidationError("rate vectors belong to different networks")
    return RateVector(0.5 * (sys_a.rates + sys_b.rates))


def dimensions(net: ReactionNetwork) -> DimensionsRecord:
    """dim (x0 + S), dim B(G), dim V(G) and its codimension delta.

    Raises:
        NotWeaklyReversibleError: If the network is not weakly reversible.
        InternalConsistencyError: If the numeric kernel rank or the codimension disagrees
            with the counting formulas.
    """
    if not is_weakly_reversible(net):
        raise NotWeaklyReversibleError("dimension formulas need a weakly reversible network")
    l = linkage_classes(net).l
    formula = net.num_edges - net.m + l
    nullity = net.num_edges - numerical_rank(balance_matrix(net))
    if nullity != formula:
        raise InternalConsistencyError(
            f"balance matrix nullity {nullity} differs from |E| - m + l = {formula}"
        )
    s = stoichiometric_space(net).s
    delta = deficiency(net)
    dim_v = s + formula
    codim = net.num_edges - dim_v
    if codim != delta:
        raise InternalConsistencyError(f"codimension {codim} differs from deficiency {delta}")

    constraint_rank = binomial_constraint_rank(net)
    consistent = constraint_rank == delta
    if not consistent:
        logger.warning(
            f"binomial constraint rank {constraint_rank} differs from deficiency {delta}"
        )
    return DimensionsRecord(
        dim_polyhedron=s,
        dim_flux_cone=formula,
        dim_V=dim_v,
        codim_V=codim,
        binomial_constraint_rank=constraint_rank,
        codim_consistent=consistent,
    )


def random_product_point(
    net: ReactionNetwork, x0: StateVector | ArrayLike, rng: np.random.Generator
) -> ProductPoint:
    """Log-normal state projected into x0 + S, paired with a random flux from the unit-rate cone."""
    x0 = as_state(x0, net.n)
    x_star = np.exp(rng.normal(0.0, 1.0, net.n))
    x = birch_projection(x_star, x0, stoichiometric_space(net))
    basis = flux_cone(net)
    interior = basis.interior_point.beta
    spread = 0.5 * float(np.mean(interior)) if interior.size else 0.0
    beta, _ = sample_flux(basis, rng.normal(0.0, spread, basis.d))
    scale = float(np.exp(rng.normal(0.0, 1.0)))
    return ProductPoint(x, FluxVector(beta.beta * scale))


def random_member(
    net: ReactionNetwork, rng: np.random.Generator, x0: Optional[ArrayLike] = None
) -> MassActionSystem:
    """A member of V(G) built as phi of a random product point."""
    x0 = np.ones(net.n) if x0 is None else x0
    point = random_product_point(net, x0, rng)
    return MassActionSystem(net, phi(point.x, point.beta, net))


def affine_invariance_check(
    net1: ReactionNetwork,
    net2: ReactionNetwork,
    trials: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    tol: Optional[float] = None,
) -> AffineCheckResult:
    """Compare toric membership on net1 and net2 for the same rate vectors.

    When net1 is weakly reversible, trials cycle through a member of V(net1) built through
    phi, that member nudged by a relative NEAR_MEMBER_NUDGE, and rates drawn log-uniformly
    from [1e-1, 1e1]. Otherwise every trial draws log-uniform rates.

    Raises:
        NetworkValidationError: If the two networks do not share one edge list.
    """
    trials = settings.DEFAULT_AFFINE_TRIALS if trials is None else trials
    tol = AFFINE_TOL if tol is None else tol
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if net1.m != net2.m or net1.edges != net2.edges:
        raise NetworkValidationError("networks do not share the same vertices and edges")
    rng = np.random.default_rng(settings.DEFAULT_SEED) if rng is None else rng
    constructible = is_weakly_reversible(net1)

    kinds = tuple(TrialKind)
    results: List[AffineTrial] = []
    for index in range(trials):
        kind = kinds[index % len(kinds)] if constructible else TrialKind.RANDOM
        if kind is TrialKind.MEMBER:
            k = random_member(net1, rng).k
        elif kind is TrialKind.NEAR_MEMBER:
            member = random_member(net1, rng).rates
            nudge = 1.0 + NEAR_MEMBER_NUDGE * rng.normal(size=net1.num_edges)
            k = RateVector(member * nudge)
        else:
            k = RateVector(np.exp(rng.uniform(np.log(0.1), np.log(10.0), net1.num_edges)))
        original = toric_membership(MassActionSystem(net1, k), tol)
        transformed = toric_membership(MassActionSystem(net2, k), tol)
        results.append(
            AffineTrial(
                index=index,
                kind=kind,
                member_original=original.member,
                member_transformed=transformed.member,
                residual_original=original.residual,
                residual_transformed=transformed.residual,
            )
        )
    disagreements = sum(1 for trial in results if not trial.agree)
    if disagreements:
        logger.warning(f"affine check: {disagreements} of {trials} trials disagree")
    return AffineCheckResult(agree=disagreements == 0, trials=tuple(results))
