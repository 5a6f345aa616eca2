"""Shared dependencies for API endpoints."""

import asyncio
import functools
import logging
from typing import Any, Callable, TypeVar

from fastapi import HTTPException, status

from src.core.exceptions import (
    NetworkValidationError,
    NotInToricLocusError,
    NotWeaklyReversibleError,
    SingularTransformError,
    ToricLabError,
    UnbalancedFluxError,
)
from src.schemas.network import NetworkFile
from src.services.analysis import AnalysisService, get_analysis_service
from src.services.network import ReactionNetwork
from src.services.network.network_io import network_from_schema

logger = logging.getLogger(__name__)

T = TypeVar("T")


def get_service() -> AnalysisService:
    """Analysis service shared by all requests."""
    return get_analysis_service()


def to_http_error(error: Exception) -> HTTPException:
    """Map a domain error to the HTTP status the API documents."""
    if isinstance(error, (NetworkValidationError, SingularTransformError)):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(error))
    if isinstance(error, (NotInToricLocusError, NotWeaklyReversibleError, UnbalancedFluxError)):
        return HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(error)
        )
    if isinstance(error, ValueError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(error))
    logger.error(f"Analysis failed: {error}", exc_info=True)
    return HTTPException(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        detail=f"Analysis failed: {error}",
    )


def build_network(data: NetworkFile) -> ReactionNetwork:
    try:
        return network_from_schema(data)
    except NetworkValidationError as e:
        raise to_http_error(e) from e


async def run_analysis(func: Callable[..., T], *args: Any, **kwargs: Any) -> T:
    """Run blocking numerical work in the default executor, mapping domain errors."""
    loop = asyncio.get_running_loop()
    try:
        return await loop.run_in_executor(None, functools.partial(func, *args, **kwargs))
    except (ToricLabError, ValueError) as e:
        raise to_http_error(e) from e
