"""Pydantic schemas for files, requests and reports."""

from src.schemas.network import NetworkFile, RatesFile
from src.schemas.reports import (
    AnalysisReport,
    DimensionsReport,
    MembershipReportResponse,
    EquilibriumResponse,
    PathReport,
    SampleReport,
    AffineTrialReport,
    AffineCheckReport,
    ConvergenceReport,
)
from src.schemas.run_config import RunConfig

__all__ = [
    "NetworkFile",
    "RatesFile",
    "AnalysisReport",
    "DimensionsReport",
    "MembershipReportResponse",
    "EquilibriumResponse",
    "PathReport",
    "SampleReport",
    "AffineTrialReport",
    "AffineCheckReport",
    "ConvergenceReport",
    "RunConfig",
]
