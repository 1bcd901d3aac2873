"""
Library settings using Pydantic Settings.

Loads numerical defaults from environment variables (prefix ``A2STAB_``) and
an optional .env file at the project root.
"""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

_ENV_FILE = Path(__file__).parent.parent.parent / ".env"


class Settings(BaseSettings):
    """Numerical and runtime configuration."""

    # Quadrature
    quad_nodes: int = 32
    target_tol: float = 1e-12
    max_doublings: int = 5
    # Minimum ray cutoff for exponential periods
    truncation_radius: float = 6.0

    # Finite-difference steps for ODE residuals
    fd_step: float = 1e-2
    exp_fd_step: float = 1e-2

    # Tolerance band for region and fundamental-domain verdicts
    region_tol: float = 1e-9

    # Samples per leg when continuing the conformal maps along a path
    path_samples: int = 24

    # Longest braid word accepted after expanding powers
    max_word_length: int = 100_000

    # Exchange graph / reduction limits
    radius_cap: int = 10
    reduction_cap: int = 1000
    bfs_depth: int = 24

    # Maximum number of entries in the rule and calibration caches
    cache_max_size: int = 256

    # Logging level (DEBUG, INFO, WARNING, ERROR)
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=_ENV_FILE,
        env_file_encoding="utf-8",
        env_prefix="A2STAB_",
        case_sensitive=False,
    )


# Create a singleton instance
settings = Settings()
