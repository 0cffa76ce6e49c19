"""
Configuration settings for the trust simulator.

Domain defaults (peer count, weights, exponents...) live on the models in
``src.models``; this module only holds environment-level settings.
"""

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Project settings."""

    # Logging
    LOG_DIR: str = Field(default="logs", description="Log directory")
    LOG_LEVEL: str = Field(default="INFO", description="Console log level")

    # Artifacts
    OUTPUT_DIR: str = Field(default="results", description="Directory for CSV and manifest output")

    # Runs
    DEFAULT_SEED: int = Field(default=42, ge=0, description="Seed used when none is given")
    DEFAULT_JOBS: int = Field(default=1, ge=1, description="Worker processes for trials")

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"


# Create global settings instance
settings = Settings()
