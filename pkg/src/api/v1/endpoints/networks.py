"""Network analysis endpoints."""

import logging

from fastapi import APIRouter, Depends, HTTPException, status
from fastapi.responses import PlainTextResponse

from src.api.v1.dependencies import build_network, get_service, run_analysis, to_http_error
from src.core.exceptions import NetworkValidationError
from src.schemas.network import NetworkFile
from src.schemas.reports import (
    AffineCheckReport,
    AnalysisReport,
    EquilibriumResponse,
    MembershipReportResponse,
    PathReport,
    SampleReport,
)
from src.schemas.requests import (
    AffineCheckRequest,
    CheckRequest,
    EquilibriumRequest,
    NetworkRequest,
    PathRequest,
    SampleRequest,
    SimulateRequest,
)
from src.services.analysis import AnalysisService
from src.services.network import example_network, list_examples, rates_for
from src.services.network.network_io import network_to_schema

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("/examples", response_model=list[str])
async def get_examples() -> list[str]:
    """Names of the built-in example networks."""
    return list_examples()


@router.get("/examples/{name}", response_model=NetworkFile)
async def get_example(name: str) -> NetworkFile:
    """A built-in example network in the file format."""
    try:
        return network_to_schema(example_network(name))
    except NetworkValidationError as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e)) from e


@router.post("/analyze", response_model=AnalysisReport, response_model_exclude_none=True)
async def analyze(
    request: NetworkRequest, service: AnalysisService = Depends(get_service)
) -> AnalysisReport:
    """Structural summary, tree constants and dimension counts."""
    net = build_network(request.network)
    try:
        rates = rates_for(net, request.rates) if request.rates is not None else None
    except NetworkValidationError as e:
        raise to_http_error(e) from e
    return await run_analysis(service.analyze, net, rates)


@router.post("/check", response_model=MembershipReportResponse)
async def check(
    request: CheckRequest, service: AnalysisService = Depends(get_service)
) -> MembershipReportResponse:
    """Toric locus membership of a rate vector."""
    net = build_network(request.network)
    report = await run_analysis(
        lambda: service.check(net, rates_for(net, request.rates), request.tol)
    )
    logger.info(f"Membership check: member={report.member}, residual={report.residual:.3e}")
    return report


@router.post("/equilibrium", response_model=EquilibriumResponse)
async def equilibrium(
    request: EquilibriumRequest, service: AnalysisService = Depends(get_service)
) -> EquilibriumResponse:
    """Complex balanced equilibrium inside x0 + S."""
    net = build_network(request.network)
    return await run_analysis(
        lambda: service.equilibrium(net, rates_for(net, request.rates), request.x0, request.tol)
    )


@router.post("/simulate", response_class=PlainTextResponse)
async def simulate(
    request: SimulateRequest, service: AnalysisService = Depends(get_service)
) -> PlainTextResponse:
    """RK4 trajectory as CSV."""
    net = build_network(request.network)
    csv_text = await run_analysis(
        lambda: service.simulate(
            net, rates_for(net, request.rates), request.x0, request.t_end, request.dt
        )
    )
    return PlainTextResponse(csv_text, media_type="text/csv")


@router.post("/sample", response_model=SampleReport)
async def sample(
    request: SampleRequest, service: AnalysisService = Depends(get_service)
) -> SampleReport:
    """Random members of the toric locus."""
    net = build_network(request.network)
    return await run_analysis(service.sample, net, request.count, request.seed, request.x0)


@router.post("/path", response_model=PathReport)
async def path(
    request: PathRequest, service: AnalysisService = Depends(get_service)
) -> PathReport:
    """Path inside the toric locus between two members."""
    net = build_network(request.network)
    return await run_analysis(
        lambda: service.path(
            net,
            rates_for(net, request.rates_a),
            rates_for(net, request.rates_b),
            request.x0,
            request.steps,
            request.tol,
        )
    )


@router.post("/affine-check", response_model=AffineCheckReport)
async def affine_check(
    request: AffineCheckRequest, service: AnalysisService = Depends(get_service)
) -> AffineCheckReport:
    """Membership agreement between a network and its affine image."""
    net = build_network(request.network)
    return await run_analysis(
        service.affine_check,
        net,
        request.matrix,
        request.offset,
        request.trials,
        request.seed,
        request.tol,
    )
