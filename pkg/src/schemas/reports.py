"""Report schemas emitted by the CLI and the HTTP API."""

from typing import List, Optional
from pydantic import BaseModel, Field


class DimensionsReport(BaseModel):
    """Dimension counts for a weakly reversible network."""

    dim_polyhedron: int = Field(..., description="s, dimension of the invariant polyhedron")
    dim_flux_cone: int = Field(..., description="|E| - m + l")
    dim_V: int = Field(..., description="Dimension of the toric locus")
    codim_V: int = Field(..., description="Codimension of the toric locus (deficiency)")
    binomial_constraint_rank: int = Field(
        ..., description="Independent binomial conditions on the tree constants"
    )
    codim_consistent: bool = Field(
        ..., description="Whether the binomial constraint rank equals the deficiency"
    )


class AnalysisReport(BaseModel):
    """Structural summary of a network, optionally with tree constants."""

    n: int = Field(..., description="Number of species")
    m: int = Field(..., description="Number of complexes")
    num_edges: int = Field(..., description="Number of edges")
    l: int = Field(..., description="Number of linkage classes")
    s: int = Field(..., description="Rank of the stoichiometric subspace")
    deficiency: int = Field(..., description="m - s - l")
    weakly_reversible: bool = Field(..., description="Every linkage class strongly connected")
    K: Optional[List[float]] = Field(
        None, description="Tree constants; omitted for non weakly reversible networks"
    )
    dimensions: Optional[DimensionsReport] = Field(
        None, description="Dimension record; omitted for non weakly reversible networks"
    )


class MembershipReportResponse(BaseModel):
    """Toric locus membership decision."""

    member: bool = Field(..., description="Whether the rates lie in the toric locus")
    residual: float = Field(..., description="Largest normalized binomial gap")
    witness: Optional[List[float]] = Field(
        None, description="A complex balanced equilibrium, when member"
    )
    reason: str = Field(..., description="ok, inconsistent-log-system or not-weakly-reversible")


class EquilibriumResponse(BaseModel):
    """Complex balanced equilibrium inside x0 + S."""

    x: List[float] = Field(..., description="Equilibrium concentrations")


class PathReport(BaseModel):
    """Rate vectors sampled along a path inside the toric locus."""

    t: List[float] = Field(..., description="Path parameter grid on [0, 1]")
    k: List[List[float]] = Field(..., description="Rate vector at every grid point")
    residuals: List[float] = Field(..., description="Membership residual at every grid point")


class SampleReport(BaseModel):
    """Random members of the toric locus."""

    seed: int = Field(..., description="Seed of the random generator")
    rates: List[List[float]] = Field(..., description="Sampled rate vectors")


class AffineTrialReport(BaseModel):
    """One membership comparison between a network and its affine image."""

    index: int
    kind: str = Field(..., description="member, near-member or random")
    constructed_member: bool = Field(..., description="Rates built as a member of V(G)")
    member_original: bool
    member_transformed: bool
    residual_original: float
    residual_transformed: float
    agree: bool


class AffineCheckReport(BaseModel):
    """Affine invariance check over many rate vectors."""

    agree: bool = Field(..., description="All trials agree")
    disagreements: int = Field(..., description="Number of disagreeing trials")
    trials: List[AffineTrialReport] = Field(default_factory=list)


class ConvergenceReport(BaseModel):
    """Simulated final state compared with the complex balanced equilibrium."""

    t_end: float
    final_state: List[float]
    equilibrium: List[float]
    distance: float = Field(..., description="Max-norm distance of the final state to Q(x0)")
    conservation_drift: float = Field(..., description="Largest S-perp drift along the run")
