"""Request schemas for the HTTP API."""

from typing import List, Optional
from pydantic import BaseModel, Field

from src.schemas.network import NetworkFile


class NetworkRequest(BaseModel):
    """A network, optionally with rates."""

    network: NetworkFile = Field(..., description="Network in the file format")
    rates: Optional[List[float]] = Field(None, description="Rate constants in edge order")


class CheckRequest(BaseModel):
    network: NetworkFile
    rates: List[float] = Field(..., description="Rate constants in edge order")
    tol: Optional[float] = Field(None, gt=0, description="Membership tolerance")


class EquilibriumRequest(CheckRequest):
    x0: List[float] = Field(..., description="Positive initial concentrations")


class SimulateRequest(BaseModel):
    network: NetworkFile
    rates: List[float]
    x0: List[float]
    t_end: Optional[float] = Field(None, ge=0, description="Final time")
    dt: Optional[float] = Field(None, gt=0, description="RK4 step")


class SampleRequest(BaseModel):
    network: NetworkFile
    count: int = Field(10, ge=0, le=10_000, description="Number of rate vectors")
    seed: Optional[int] = Field(None, description="Random seed")
    x0: Optional[List[float]] = Field(None, description="Positive reference state")


class PathRequest(BaseModel):
    network: NetworkFile
    rates_a: List[float] = Field(..., description="Start of the path")
    rates_b: List[float] = Field(..., description="End of the path")
    x0: Optional[List[float]] = Field(None, description="Positive reference state")
    steps: Optional[int] = Field(None, ge=2, le=10_000, description="Number of samples")
    tol: Optional[float] = Field(None, gt=0)


class AffineCheckRequest(BaseModel):
    network: NetworkFile
    matrix: List[List[float]] = Field(..., description="Square matrix A, row by row")
    offset: List[float] = Field(..., description="Offset b")
    trials: Optional[int] = Field(None, ge=1, le=10_000)
    seed: Optional[int] = None
    tol: Optional[float] = Field(None, gt=0, description="Membership tolerance")
