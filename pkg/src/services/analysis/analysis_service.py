"""Report assembly shared by the command line and the HTTP API."""

import logging
from typing import Optional, Sequence

import numpy as np

from src.core.config import settings
from src.schemas.reports import (
    AffineCheckReport,
    AffineTrialReport,
    AnalysisReport,
    ConvergenceReport,
    DimensionsReport,
    EquilibriumResponse,
    MembershipReportResponse,
    PathReport,
    SampleReport,
)
from src.services.kinetics import (
    MassActionSystem,
    conservation_drift,
    parse_positive_vector,
    simulate,
    tree_constants_minor,
    write_trajectory_csv,
)
from src.services.locus import (
    Q_map,
    affine_invariance_check,
    connect_path,
    dimensions,
    random_member,
    toric_membership,
)
from src.services.network import (
    RateVector,
    ReactionNetwork,
    affine_transform,
    deficiency,
    is_weakly_reversible,
    linkage_classes,
    stoichiometric_space,
)

logger = logging.getLogger(__name__)


class AnalysisService:
    """Runs one analysis per call and packages the result as a schema."""

    def analyze(
        self, net: ReactionNetwork, rates: Optional[RateVector] = None
    ) -> AnalysisReport:
        """Structural summary; K uses the given rates, or unit rates when none are given."""
        weakly_reversible = is_weakly_reversible(net)
        report = AnalysisReport(
            n=net.n,
            m=net.m,
            num_edges=net.num_edges,
            l=linkage_classes(net).l,
            s=stoichiometric_space(net).s,
            deficiency=deficiency(net),
            weakly_reversible=weakly_reversible,
        )
        if weakly_reversible:
            k = rates if rates is not None else RateVector(np.ones(net.num_edges))
            report.K = tree_constants_minor(MassActionSystem(net, k)).K.tolist()
            report.dimensions = DimensionsReport(**dimensions(net).to_dict())
        logger.info(
            f"Analyzed network: m={report.m}, s={report.s}, l={report.l}, "
            f"deficiency={report.deficiency}, weakly_reversible={weakly_reversible}"
        )
        return report

    def check(
        self, net: ReactionNetwork, rates: RateVector, tol: Optional[float] = None
    ) -> MembershipReportResponse:
        report = toric_membership(MassActionSystem(net, rates), tol)
        return MembershipReportResponse(**report.to_dict())

    def equilibrium(
        self,
        net: ReactionNetwork,
        rates: RateVector,
        x0: Sequence[float] | str,
        tol: Optional[float] = None,
    ) -> EquilibriumResponse:
        x0 = parse_positive_vector(x0, net.n)
        point = Q_map(MassActionSystem(net, rates), x0, tol)
        return EquilibriumResponse(x=point.to_list())

    def simulate(
        self,
        net: ReactionNetwork,
        rates: RateVector,
        x0: Sequence[float] | str,
        t_end: Optional[float] = None,
        dt: Optional[float] = None,
    ) -> str:
        """RK4 trajectory as CSV text."""
        x0 = parse_positive_vector(x0, net.n)
        t_end = settings.DEFAULT_T_END if t_end is None else t_end
        dt = settings.DEFAULT_DT if dt is None else dt
        samples = simulate(MassActionSystem(net, rates), x0, t_end, dt)
        return write_trajectory_csv(samples, net.n)

    def convergence_report(
        self,
        net: ReactionNetwork,
        rates: RateVector,
        x0: Sequence[float] | str,
        t_end: Optional[float] = None,
        dt: Optional[float] = None,
        tol: Optional[float] = None,
    ) -> ConvergenceReport:
        """Compare the end of an RK4 run with the complex balanced equilibrium in x0 + S."""
        x0 = parse_positive_vector(x0, net.n)
        t_end = settings.DEFAULT_T_END if t_end is None else t_end
        dt = settings.DEFAULT_DT if dt is None else dt
        sys = MassActionSystem(net, rates)
        target = Q_map(sys, x0, tol)
        samples = simulate(sys, x0, t_end, dt)
        final = samples[-1][1]
        return ConvergenceReport(
            t_end=t_end,
            final_state=final.tolist(),
            equilibrium=target.to_list(),
            distance=float(np.max(np.abs(final - target.x))),
            conservation_drift=conservation_drift(net, x0, samples),
        )

    def sample(
        self,
        net: ReactionNetwork,
        count: int,
        seed: Optional[int] = None,
        x0: Optional[Sequence[float] | str] = None,
    ) -> SampleReport:
        """count members of V(G) built through phi from random product points."""
        if count < 0:
            raise ValueError("count must be non-negative")
        seed = settings.DEFAULT_SEED if seed is None else seed
        x0 = np.ones(net.n) if x0 is None else parse_positive_vector(x0, net.n)
        rng = np.random.default_rng(seed)
        rates = [random_member(net, rng, x0).rates.tolist() for _ in range(count)]
        return SampleReport(seed=seed, rates=rates)

    def path(
        self,
        net: ReactionNetwork,
        rates_a: RateVector,
        rates_b: RateVector,
        x0: Optional[Sequence[float] | str] = None,
        steps: Optional[int] = None,
        tol: Optional[float] = None,
    ) -> PathReport:
        x0 = np.ones(net.n) if x0 is None else parse_positive_vector(x0, net.n)
        path = connect_path(
            MassActionSystem(net, rates_a), MassActionSystem(net, rates_b), x0, steps, tol
        )
        return PathReport(**path.to_dict())

    def affine_check(
        self,
        net: ReactionNetwork,
        matrix: Sequence[Sequence[float]] | np.ndarray,
        offset: Sequence[float] | np.ndarray,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        tol: Optional[float] = None,
    ) -> AffineCheckReport:
        image = affine_transform(net, matrix, offset)
        seed = settings.DEFAULT_SEED if seed is None else seed
        result = affine_invariance_check(net, image, trials, np.random.default_rng(seed), tol)
        trials_out = [
            AffineTrialReport(
                index=trial.index,
                kind=trial.kind.value,
                constructed_member=trial.constructed_member,
                member_original=trial.member_original,
                member_transformed=trial.member_transformed,
                residual_original=trial.residual_original,
                residual_transformed=trial.residual_transformed,
                agree=trial.agree,
            )
            for trial in result.trials
        ]
        return AffineCheckReport(
            agree=result.agree,
            disagreements=sum(1 for trial in result.trials if not trial.agree),
            trials=trials_out,
        )


_analysis_service: Optional[AnalysisService] = None


def get_analysis_service() -> AnalysisService:
    """Get or create shared analysis service instance."""
    global _analysis_service
    if _analysis_service is None:
        _analysis_service = AnalysisService()
    return _analysis_service
