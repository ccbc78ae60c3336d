"""
Runtime settings for slgal.

All numeric defaults used by the services and the CLI are declared here once.
Values can be overridden with SLGAL_* environment variables or a .env file.
"""

from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="SLGAL_", env_file=".env", extra="ignore")

    log_level: str = Field(default="INFO", description="Root logging level for the CLI")

    # region membership and algebraic tests
    boundary_tol: float = Field(default=1e-12, description="Equality tolerance for Re(kappa) = 0")
    kimura_tol: float = Field(default=1e-8, description="Distance of a Kimura sum to an odd integer")
    backsub_tol: float = Field(default=1e-9, description="Back-substitution tolerance for squared roots")
    dedupe_tol: float = Field(default=1e-9, description="Candidates closer than this merge")
    fuchs_tol: float = Field(default=1e-10, description="Fuchs relation tolerance")
    scan_xtol: float = Field(default=1e-10, description="Root refinement tolerance of the Kimura scan")
    scan_grid: int = Field(default=2000, ge=100)
    window_margin: float = Field(default=1e-9, description="Offset above max(nu_-, nu_+) for the search window")
    series_rtol: float = Field(default=1e-16)
    series_max_terms: int = Field(default=2000)
    sup_nu_grid: int = Field(default=2001)

    # complex-plane continuation
    integrator_rtol: float = Field(default=1e-11)
    integrator_atol: float = Field(default=1e-13)
    integrator_attempts: int = Field(default=3)
    heteroclinic_rtol: float = Field(default=1e-12)
    heteroclinic_span: float = Field(default=40.0, description="Orbit span in units of 1/|f'(z_pm)|")
    clearance: float = Field(default=0.05)
    loop_waypoints: int = Field(default=32)
    infinity_margin: float = Field(
        default=0.45,
        description="Gap between the circle around infinity and the outermost finite singularity, relative to their spacing",
    )
    radius_fraction: float = Field(default=0.8, description="Default loop radius relative to the distance to the base point")
    radius_spacing: float = Field(default=0.45, description="Default loop radius relative to the nearest other singularity")
    monodromy_tol: float = Field(default=1e-6)

    # shooting oracle
    shoot_min_length: float = Field(default=40.0)
    shoot_tail_exponent: float = Field(default=25.0)
    shoot_max_length: float = Field(default=200.0)
    oracle_steps: int = Field(default=500, ge=50)
    oracle_xtol: float = Field(default=1e-9)
    degenerate_edge_tol: float = Field(default=1e-10)

    # eigenfunction checks
    residual_step: float = Field(default=1e-3)
    residual_tol: float = Field(default=1e-6)
    verify_tol: float = Field(default=1e-5)

    # reports and command line
    region_resolution: int = Field(default=200, ge=10)
    sweep_rows: int = Field(default=50, ge=2)
    sample_grid: str = Field(default="-10:10:0.1", description="lo:hi:step grid for profiles and eigenfunctions")

    max_workers: int = Field(default=4, ge=1)


@lru_cache
def get_settings() -> Settings:
    return Settings()
