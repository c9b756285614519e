"""
Runtime Settings
Environment-backed settings shared by the CLI and the invariant suite
"""
import logging
from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Process-wide settings read from BOSONALG_* variables or a .env file"""

    model_config = SettingsConfigDict(
        env_prefix="BOSONALG_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    threads: Optional[int] = Field(default=None, ge=1, description="Cap on internal worker threads")
    log_level: str = Field(default="WARNING", description="Root log level for the CLI")

    def worker_count(self) -> int:
        """Number of workers the invariant suite may use"""
        return self.threads or 1


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings()
    logger.debug(f"Loaded settings: threads={settings.threads}, log_level={settings.log_level}")
    return settings
