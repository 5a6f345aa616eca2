"""Toric locus membership, complex balanced equilibria and the product structure of V(G)."""

from src.services.locus.toric_locus import (
    MembershipReason,
    MembershipReport,
    EquilibriumPoint,
    EquilibriumSetDescription,
    spanning_pairs,
    log_linear_system,
    binomial_gap,
    binomial_constraint_rank,
    toric_membership,
    equilibrium_set,
    birch_projection,
    Q_map,
    retarget_rates,
)
from src.services.locus.product_structure import (
    FluxVector,
    FluxConeBasis,
    ProductPoint,
    DimensionsRecord,
    TrialKind,
    AffineTrial,
    AffineCheckResult,
    ConnectingPath,
    balance_matrix,
    flux_balance_residual,
    flux_cone,
    sample_flux,
    phi,
    q_hat,
    phi_inverse,
    connect_path,
    naive_segment_midpoint,
    dimensions,
    random_product_point,
    random_member,
    affine_invariance_check,
)

__all__ = [
    "MembershipReason",
    "MembershipReport",
    "EquilibriumPoint",
    "EquilibriumSetDescription",
    "spanning_pairs",
    "log_linear_system",
    "binomial_gap",
    "binomial_constraint_rank",
    "toric_membership",
    "equilibrium_set",
    "birch_projection",
    "Q_map",
    "retarget_rates",
    "FluxVector",
    "FluxConeBasis",
    "ProductPoint",
    "DimensionsRecord",
    "TrialKind",
    "AffineTrial",
    "AffineCheckResult",
    "ConnectingPath",
    "balance_matrix",
    "flux_balance_residual",
    "flux_cone",
    "sample_flux",
    "phi",
    "q_hat",
    "phi_inverse",
    "connect_path",
    "naive_segment_midpoint",
    "dimensions",
    "random_product_point",
    "random_member",
    "affine_invariance_check",
]
