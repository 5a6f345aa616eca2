"""Mass-action kinetics and Matrix-Tree constants."""

from src.services.kinetics.mass_action import (
    MassActionSystem,
    StateVector,
    LaplacianMatrix,
    as_state,
    psi,
    laplacian,
    edge_fluxes,
    rhs,
    cb_residual,
    vertex_throughput,
    is_complex_balanced_at,
    simulate,
    conservation_drift,
    write_trajectory_csv,
    read_trajectory_csv,
    parse_positive_vector,
)
from src.services.kinetics.tree_constants import (
    TreeConstantVector,
    tree_constants_minor,
    enumerate_in_trees,
    tree_constants_enum,
    kernel_residual,
)

__all__ = [
    "MassActionSystem",
    "StateVector",
    "LaplacianMatrix",
    "as_state",
    "psi",
    "laplacian",
    "edge_fluxes",
    "rhs",
    "cb_residual",
    "vertex_throughput",
    "is_complex_balanced_at",
    "simulate",
    "conservation_drift",
    "write_trajectory_csv",
    "read_trajectory_csv",
    "parse_positive_vector",
    "TreeConstantVector",
    "tree_constants_minor",
    "enumerate_in_trees",
    "tree_constants_enum",
    "kernel_residual",
]
