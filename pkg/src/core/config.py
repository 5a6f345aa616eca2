"""Application configuration using Pydantic settings."""

from typing import List
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    # Application
    ENVIRONMENT: str = "development"
    LOG_LEVEL: str = "INFO"
    LOG_FILE: str = ""  # empty disables the file handler
    CORS_ORIGINS: List[str] = ["*"]  # Allow all origins

    # Numerical tolerances
    DEFAULT_TOL: float = 1e-8  # membership and complex-balance tolerance
    RANK_TOL: float = 1e-10  # relative singular value threshold
    BALANCE_TOL: float = 1e-10  # flux balance (relative)
    AFFINE_COND_LIMIT: float = 1e12  # condition number treated as singular

    # Solvers
    NEWTON_MAX_ITER: int = 200
    MAX_TREE_CLASS_SIZE: int = 12

    # Run defaults
    DEFAULT_SEED: int = 0
    DEFAULT_PATH_STEPS: int = 50
    DEFAULT_AFFINE_TRIALS: int = 200
    DEFAULT_T_END: float = 20.0
    DEFAULT_DT: float = 0.01

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",  # Ignore extra environment variables
    )


settings = Settings()
