"""
Settings module - Pydantic env configuration
Process-wide knobs read from HOLOSCOPE_* variables or a .env file
"""
from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings from environment variables"""

    # Result cache (HOLOSCOPE_CACHE overrides the config file)
    cache: Optional[Path] = None

    # Logging
    log_level: str = "INFO"

    # Sweeps
    workers: int = 1

    # Prometheus text file written after each command
    metrics_path: Optional[Path] = None

    model_config = {
        "env_prefix": "HOLOSCOPE_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore"
    }


settings = Settings()
