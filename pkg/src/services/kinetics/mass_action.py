"""Mass-action vector field, complex-balance residuals and RK4 trajectories."""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from src.core.config import settings
from src.core.exceptions import NetworkValidationError, StepUnderflowError
from src.services.network.reaction_network import (
    RateVector,
    ReactionNetwork,
    complex_matrix,
    reaction_vectors,
    stoichiometric_space,
)

logger = logging.getLogger(__name__)

# m x m, column sums zero; entry (j, i) is the rate of edge i -> j
LaplacianMatrix = np.ndarray

Trajectory = List[Tuple[float, np.ndarray]]


@dataclass(frozen=True, eq=False)
class MassActionSystem:
    """A reaction network together with one positive rate per edge."""

    net: ReactionNetwork
    k: RateVector

    def __post_init__(self) -> None:
        if not isinstance(self.k, RateVector):
            object.__setattr__(self, "k", RateVector(self.k))
        if len(self.k) != self.net.num_edges:
            raise NetworkValidationError(
                f"rate count {len(self.k)} does not match edge count {self.net.num_edges}"
            )

    @property
    def rates(self) -> np.ndarray:
        return self.k.k

    def with_rates(self, k: RateVector | ArrayLike) -> "MassActionSystem":
        return MassActionSystem(self.net, k if isinstance(k, RateVector) else RateVector(k))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Strictly positive species concentrations."""

    x: np.ndarray

    def __post_init__(self) -> None:
        x = np.array(self.x, dtype=float).reshape(-1)
        if not np.all(np.isfinite(x)) or np.any(x <= 0):
            raise NetworkValidationError("state must be finite and strictly positive")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)


def as_state(x: StateVector | ArrayLike, n: int) -> np.ndarray:
    """Validate a positive state of length n and return it as an array."""
    values = x.x if isinstance(x, StateVector) else StateVector(x).x
    if values.size != n:
        raise NetworkValidationError(f"state has {values.size} entries, expected {n}")
    return values


def psi(net: ReactionNetwork, x: StateVector | ArrayLike) -> np.ndarray:
    """Monomials x^{y_i} for every complex, evaluated in log space."""
    x = as_state(x, net.n)
    return np.exp(net.complexes @ np.log(x))


def laplacian(sys: MassActionSystem) -> LaplacianMatrix:
    net = sys.net
    A = np.zeros((net.m, net.m))
    if net.num_edges:
        np.add.at(A, (net.targets, net.sources), sys.rates)
        np.add.at(A, (net.sources, net.sources), -sys.rates)
    return A


def edge_fluxes(sys: MassActionSystem, x: StateVector | ArrayLike) -> np.ndarray:
    """k_e * x^{y_source(e)} for every edge."""
    monomials = psi(sys.net, x)
    return sys.rates * monomials[sys.net.sources]


def rhs(sys: MassActionSystem, x: StateVector | ArrayLike) -> np.ndarray:
    """dx/dt = Y A_k Psi(x)."""
    net = sys.net
    x = as_state(x, net.n)
    monomials = psi(net, x)
    vectors = reaction_vectors(net)
    matrix_form = complex_matrix(net) @ (laplacian(sys) @ monomials)
    fluxes = sys.rates * monomials[net.sources]
    edge_form = vectors.T @ fluxes
    scale = float((np.abs(vectors).T @ fluxes).sum())
    assert np.max(np.abs(matrix_form - edge_form), initial=0.0) <= 1e-12 * (1.0 + scale), (
        "matrix and edge-sum forms of the vector field disagree"
    )
    return edge_form


def cb_residual(sys: MassActionSystem, x: StateVector | ArrayLike) -> np.ndarray:
    """Per-vertex inflow minus outflow; equals A_k Psi(x)."""
    net = sys.net
    fluxes = edge_fluxes(sys, x)
    residual = np.zeros(net.m)
    np.add.at(residual, net.targets, fluxes)
    np.add.at(residual, net.sources, -fluxes)
    return residual


def vertex_throughput(sys: MassActionSystem, x: StateVector | ArrayLike) -> np.ndarray:
    net = sys.net
    fluxes = edge_fluxes(sys, x)
    throughput = np.zeros(net.m)
    np.add.at(throughput, net.targets, fluxes)
    np.add.at(throughput, net.sources, fluxes)
    return throughput


def is_complex_balanced_at(
    sys: MassActionSystem, x: StateVector | ArrayLike, tol: Optional[float] = None
) -> bool:
    tol = settings.DEFAULT_TOL if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    residual = cb_residual(sys, x)
    throughput = vertex_throughput(sys, x)
    normalized = np.max(np.abs(residual), initial=0.0) / (1.0 + np.max(throughput, initial=0.0))
    return bool(normalized <= tol)


def _field(
    net: ReactionNetwork, rates: np.ndarray, vectors: np.ndarray, x: np.ndarray
) -> np.ndarray:
    """Edge-sum vector field without validation, for integrator stages."""
    monomials = np.exp(net.complexes[net.sources] @ np.log(x))
    return vectors.T @ (rates * monomials)


def simulate(
    sys: MassActionSystem,
    x0: StateVector | ArrayLike,
    t_end: float,
    dt: float,
) -> Trajectory:
    """Classical fixed-step RK4 trajectory from x0 to t_end.

    The last step is shortened to land exactly on t_end.

    Raises:
        StepUnderflowError: If a stage or step leaves the positive orthant.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    net = sys.net
    x = np.array(as_state(x0, net.n))
    samples: Trajectory = [(0.0, x.copy())]
    if t_end == 0:
        return samples

    vectors = reaction_vectors(net)
    rates = sys.rates
    n_steps = max(1, math.ceil(t_end / dt - 1e-9))
    t = 0.0

    def stage(point: np.ndarray) -> np.ndarray:
        if not np.all(point > 0) or not np.all(np.isfinite(point)):
            raise StepUnderflowError(
                f"RK4 stage left the positive orthant at t={t:.6g}; reduce dt (dt={dt})",
                t,
                x.copy(),
            )
        return _field(net, rates, vectors, point)

    for step in range(n_steps):
        t_next = t_end if step == n_steps - 1 else (step + 1) * dt
        h = t_next - t
        k1 = stage(x)
        k2 = stage(x + 0.5 * h * k1)
        k3 = stage(x + 0.5 * h * k2)
        k4 = stage(x + h * k3)
        x_next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(x_next > 0) or not np.all(np.isfinite(x_next)):
            raise StepUnderflowError(
                f"state left the positive orthant at t={t + h:.6g}; reduce dt (dt={dt})",
                t,
                x.copy(),
            )
        x = x_next
        t = t_next
        samples.append((t, x.copy()))

    logger.debug(f"simulate: {n_steps} RK4 steps to t={t_end}, final state {x}")
    return samples


def conservation_drift(
    net: ReactionNetwork, x0: StateVector | ArrayLike, samples: Trajectory
) -> float:
    """Largest S-perp component of x(t) - x0 over a trajectory."""
    x0 = as_state(x0, net.n)
    projector = stoichiometric_space(net).perp_projector()
    drift = 0.0
    for _, x in samples:
        drift = max(drift, float(np.linalg.norm(projector @ (x - x0))))
    return drift


def write_trajectory_csv(samples: Trajectory, n: Optional[int] = None) -> str:
    """CSV with header t,x1,...,xn and 17 significant digits per value."""
    if n is None:
        n = samples[0][1].size if samples else 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t"] + [f"x{i + 1}" for i in range(n)])
    for t, x in samples:
        writer.writerow([f"{t:.17g}"] + [f"{v:.17g}" for v in x])
    return buffer.getvalue()


def read_trajectory_csv(text: str) -> Trajectory:
    rows = list(csv.reader(io.StringIO(text)))
    return [(float(r[0]), np.array([float(v) for v in r[1:]])) for r in rows[1:] if r]


def parse_positive_vector(text: str | Sequence[float], n: int, label: str = "x0") -> np.ndarray:
    """Parse a comma-separated list of positives (CLI --x0 style)."""
    if isinstance(text, str):
        try:
            values = [float(v) for v in text.split(",") if v.strip()]
        except ValueError as e:
            raise NetworkValidationError(f"{label} must be comma-separated numbers") from e
    else:
        values = [float(v) for v in text]
    try:
        return as_state(values, n)
    except NetworkValidationError as e:
        raise NetworkValidationError(f"{label}: {e}") from e
