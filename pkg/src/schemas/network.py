"""Network and rate file Pydantic schemas."""

from typing import List, Tuple
from pydantic import BaseModel, ConfigDict, Field


class NetworkFile(BaseModel):
    """Schema for a network JSON file (0-based edge indices)."""

    model_config = ConfigDict(extra="forbid")

    species: List[str] = Field(..., min_length=1, description="Species names, length n")
    complexes: List[List[float]] = Field(
        ..., min_length=1, description="Complex coordinates y_i, each of length n"
    )
    edges: List[Tuple[int, int]] = Field(
        default_factory=list, description="Directed edges (source, target)"
    )


class RatesFile(BaseModel):
    """Schema for a rates JSON file, one positive rate per edge in edge order."""

    model_config = ConfigDict(extra="forbid")

    rates: List[float] = Field(..., description="Rate constants k_e in edge order")
