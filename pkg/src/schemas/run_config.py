"""Per-invocation settings validated before any computation runs."""

from pydantic import BaseModel, Field

from src.core.config import settings


class RunConfig(BaseModel):
    """Tolerances, seeds and step counts for one CLI command."""

    tol: float = Field(default_factory=lambda: settings.DEFAULT_TOL, gt=0)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    steps: int = Field(default_factory=lambda: settings.DEFAULT_PATH_STEPS, ge=2)
    count: int = Field(default=10, ge=0)
    trials: int = Field(default_factory=lambda: settings.DEFAULT_AFFINE_TRIALS, ge=1)
    t_end: float = Field(default_factory=lambda: settings.DEFAULT_T_END, ge=0)
    dt: float = Field(default_factory=lambda: settings.DEFAULT_DT, gt=0)
