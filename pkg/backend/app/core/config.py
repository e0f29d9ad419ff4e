"""
OreSolve - Configuration Management
Engine defaults, verification and worker settings
"""

import logging
from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


class Settings(BaseSettings):
    app_name: str = "OreSolve"
    debug: bool = Field(default=False, env="DEBUG")
    log_level: str = Field(default="INFO", env="LOG_LEVEL")

    # Polynomial solution search
    degree_cap: int = Field(default=200, env="DEGREE_CAP")

    # Candidate filtering and tracing (det | none)
    candidate_filter: str = Field(default="det", env="CANDIDATE_FILTER")
    trace: bool = Field(default=False, env="TRACE")
    progress: bool = Field(default=False, env="PROGRESS")
    workers: int = Field(default=1, env="WORKERS")

    # Randomized verification
    seed: int = Field(default=0, env="SEED")
    verify_terms: int = Field(default=50, env="VERIFY_TERMS")

    corpus_path: str = Field(default=str(CORPUS_DIR), env="CORPUS_PATH")
    report_schema_version: str = "1.0"

    class Config:
        env_file = ".env"
        case_sensitive = False
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
