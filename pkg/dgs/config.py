from functools import lru_cache
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):

    # App Config
    app_name: str = "dgs"
    debug: bool = False
    version: str = "0.1.0"

    # Logging
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    slow_command_seconds: float = 5.0

    # Tolerances
    eigen_tol: float = 1e-9
    solver_tol: float = 1e-12
    identity_tol: float = 1e-9
    resolvent_margin: float = 1e-8

    # Iterative solvers
    max_iterations: int = 20000
    dense_cutoff: int = 16
    dense_oracle_limit: int = 2000

    # Harnack
    harnack_enumeration_limit: int = 16

    # Shnol
    shnol_evidence_threshold: float = 0.25
    tail_share_threshold: float = 1e-3
    pairing_support_radius: int = 3

    # Reproducibility / output
    default_seed: int = 0
    float_digits: int = 17

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="DGS_", case_sensitive=False, extra="ignore", encoding="utf-8"
    )


# Global settings instance
settings = Settings()

@lru_cache
def get_settings():
    return settings
