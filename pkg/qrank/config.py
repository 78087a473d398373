from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict

# qrank/config.py

PACKAGE_DIR = Path(__file__).resolve().parent
PROJECT_DIR = PACKAGE_DIR.parent


class Settings(BaseSettings):
    # ------------------
    # Core
    # ------------------
    APP_NAME: str = "qrank"
    LOG_LEVEL: str = "INFO"
    OUTPUT_DIR: Path = PROJECT_DIR / "output"

    # ------------------
    # Quantum walk
    # ------------------
    DEFAULT_STEPS: int = 500
    DEFAULT_WINDOW: int = 50
    BURN_IN_STEPS: int = 0

    # Matrix fed to the SVD that builds the scattering unitary
    SHIFT_SOURCE: Literal["adjacency", "google"] = "adjacency"
    # "source-rows": row x of the SVD input holds the out-links of node x
    # (the transpose of the column-stochastic layout used for PageRank)
    SHIFT_ORIENTATION: Literal["source-rows", "source-columns"] = "source-rows"

    # ------------------
    # Classical PageRank
    # ------------------
    PAGERANK_P: float = 0.85
    PAGERANK_CONVENTION: Literal["teleport", "damping"] = "teleport"
    PAGERANK_TOL: float = 1e-12
    PAGERANK_MAX_ITER: int = 100_000

    # ------------------
    # Numerics
    # ------------------
    UNITARY_TOL: float = 1e-10
    SVD_ROUND_DECIMALS: int = 10
    # Relative to the largest running mean; closer values count as tied
    # and are ordered by node index
    TIE_TOLERANCE: float = 1e-12

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="QRANK_",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()
