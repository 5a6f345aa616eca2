"""Main API v1 router."""

from fastapi import APIRouter

from src.api.v1.endpoints import networks

api_router = APIRouter()

api_router.include_router(networks.router, prefix="/networks", tags=["networks"])
