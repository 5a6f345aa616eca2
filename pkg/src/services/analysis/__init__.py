"""Report assembly shared by the CLI and the HTTP API."""

from src.services.analysis.analysis_service import AnalysisService, get_analysis_service

__all__ = ["AnalysisService", "get_analysis_service"]
