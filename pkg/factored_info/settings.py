"""Configuration settings for factored-info"""

import logging
import os
from typing import Dict, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Configuration settings for enumeration caps, tolerances and workers"""
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="FACTORED_INFO_",
        extra="ignore"  # Ignore extra fields
    )

    # Worker parallelism (FACTORED_INFO_THREADS)
    threads: int = Field(default=1, ge=1)
    log_level: str = "WARNING"

    # Tolerances
    float_tolerance: float = 1e-12
    agreement_tolerance: float = 1e-10

    # Enumeration caps
    code_cap: int = Field(default=100_000, ge=1)
    partition_cap: int = Field(default=10_000, ge=1)
    polytope_cap: int = Field(default=10_000, ge=1)
    support_cap: int = Field(default=64, ge=1)
    vertex_column_cap: int = Field(default=64, ge=1)
    block_mi_cap: int = Field(default=100_000, ge=1)

    @classmethod
    def from_env_dict(cls, env_vars: Dict[str, str]) -> 'Settings':
        """Create Settings instance from environment variables dictionary"""
        # Temporarily set environment variables
        original_env = {}
        for key, value in env_vars.items():
            original_env[key] = os.environ.get(key)
            os.environ[key] = value

        try:
            return cls()
        finally:
            for key, original_value in original_env.items():
                if original_value is None:
                    os.environ.pop(key, None)
                else:
                    os.environ[key] = original_value


# Global settings instance
_global_settings: Optional[Settings] = None


def set_global_settings(env_vars: Optional[Dict[str, str]] = None) -> Settings:
    """Set global settings from environment variables"""
    global _global_settings
    if env_vars:
        _global_settings = Settings.from_env_dict(env_vars)
    else:
        _global_settings = Settings()
    logger.debug(f"Settings loaded: {_global_settings.model_dump()}")
    return _global_settings


def get_global_settings() -> Settings:
    """Get global settings instance"""
    global _global_settings
    if _global_settings is None:
        _global_settings = Settings()
    return _global_settings
