"""
stampkit configuration: Pydantic settings.

Values come from STAMPKIT_* environment variables or a local .env file.
"""

from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings


class StampkitSettings(BaseSettings):
    """Solver and batch settings."""

    # Entry cap for weight tables and representability bitmaps
    max_table: int = 100_000_000

    # Selmer analysis
    default_probes: int = 4
    lemma_i_max: int = 4

    # Batch checks
    workers: int = 1

    log_level: str = "WARNING"

    @field_validator("max_table", "workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("default_probes", "lemma_i_max")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must be >= 0")
        return value

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        env_prefix = "STAMPKIT_"
        extra = "ignore"


@lru_cache
def get_settings() -> StampkitSettings:
    return StampkitSettings()


def reload_settings() -> StampkitSettings:
    """Re-read settings from the environment (clears lru_cache)."""
    get_settings.cache_clear()
    return get_settings()


def resolve_max_table(max_table: int | None) -> int:
    """Explicit cap if given, otherwise the configured one."""
    if max_table is not None:
        return max_table
    return get_settings().max_table
