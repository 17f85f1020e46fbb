"""
Application Settings

Process-level configuration using Pydantic Settings (12-Factor App pattern).
Experiment-specific parameters live in the YAML experiment config instead.
"""
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings from environment variables"""

    # Application
    APP_NAME: str = "mtirl"
    APP_VERSION: str = "0.1.0"
    ENVIRONMENT: str = "development"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "readable"  # readable | json
    LOG_USE_COLORS: bool = True

    # Experiment harness
    OUTPUT_DIR: str = "outputs"
    WORKERS: int = 1

    # Planner defaults
    PLANNER_TOL: float = 1e-10
    PLANNER_MAX_ITER: int = 100_000

    # Experiment defaults
    DEFAULT_DISCOUNT: float = 0.95
    DEFAULT_HORIZON: int = 200
    RNG_ALGORITHM: str = "PCG64"

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": True,
        "extra": "ignore"
    }


# Singleton instance
settings = Settings()
