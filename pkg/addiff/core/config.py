"""
Runtime settings read from the environment (and a .env file, if present).
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .models.enums import Algorithm

logger = logging.getLogger(__name__)

DEFAULT_STATE_BUDGET = 2_000_000
DEFAULT_NODE_BUDGET = 2**22
DEFAULT_DOMAIN_LIMIT = 2**16
DEFAULT_ENUMERATION_LIMIT = 10**6


class Settings(BaseModel):
    """Limits and defaults shared by the library and the command line."""

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    state_budget: Optional[int] = Field(
        DEFAULT_STATE_BUDGET, ge=1, description="Maximum explored states or state pairs"
    )
    node_budget: Optional[int] = Field(
        DEFAULT_NODE_BUDGET, ge=1, description="Maximum live decision-diagram nodes"
    )
    domain_limit: int = Field(
        DEFAULT_DOMAIN_LIMIT, ge=1, description="Largest accepted bounded-integer domain"
    )
    enumeration_limit: int = Field(
        DEFAULT_ENUMERATION_LIMIT,
        ge=1,
        description="Assignment-space size up to which guards are checked by enumeration",
    )
    algorithm: Algorithm = Field(Algorithm.SYMBOLIC, description="Default differencing algorithm")
    max_workers: int = Field(2, ge=1, description="Worker threads for independent comparisons")
    log_level: str = Field("INFO", description="Root logging level")

    @field_validator("algorithm", mode="before")
    @classmethod
    def normalize_algorithm(cls, v: object) -> Algorithm:
        """Normalize algorithm input."""
        if isinstance(v, Algorithm):
            return v
        return Algorithm.normalize(v if isinstance(v, str) else None)

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: object) -> str:
        level = str(v or "INFO").upper().strip()
        return level if level in logging._nameToLevel else "INFO"

    @classmethod
    def from_env(cls, dotenv: bool = True) -> "Settings":
        """
        Build settings from ADDIFF_* environment variables

        Args:
            dotenv: Whether to load a .env file first

        Returns:
            Settings with defaults for unset variables
        """
        if dotenv:
            load_dotenv()

        values = {}
        int_fields = {
            "ADDIFF_STATE_BUDGET": "state_budget",
            "ADDIFF_NODE_BUDGET": "node_budget",
            "ADDIFF_DOMAIN_LIMIT": "domain_limit",
            "ADDIFF_ENUM_LIMIT": "enumeration_limit",
            "ADDIFF_MAX_WORKERS": "max_workers",
        }
        for env_name, field_name in int_fields.items():
            raw = os.getenv(env_name)
            if raw is None or not raw.strip():
                continue
            try:
                values[field_name] = int(raw)
            except ValueError:
                logger.warning(f"Ignoring non-numeric {env_name}={raw!r}")

        algorithm = os.getenv("ADDIFF_ALGORITHM")
        if algorithm:
            values["algorithm"] = algorithm
        log_level = os.getenv("ADDIFF_LOG_LEVEL")
        if log_level:
            values["log_level"] = log_level

        return cls(**values)
