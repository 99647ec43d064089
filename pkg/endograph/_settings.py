"""Hidden to avoid confusions with the initialized settings"""

from typing import Any

from pydantic import Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import QQ, Rational


class _Settings(BaseSettings):
    """
    Settings format we expect. A .env file with the following fields and defaults.
    It gets initialized in the roots __init__.py, command line flags override it per invocation.
    """

    model_config = SettingsConfigDict(
        env_prefix="endograph__",
        env_file=".env",
        env_file_encoding="utf-8",
    )

    DEBUG_LEVEL: str = Field(default="WARNING")

    # budgets: exceeding one is a resource error, never a silently truncated answer
    MONOMIAL_BUDGET: int = Field(default=200_000, gt=0)
    GROEBNER_BUDGET: int = Field(default=50_000, gt=0)
    SPLIT_BUDGET: int = Field(default=40, gt=0)
    VERTEX_BUDGET: int = Field(default=64, gt=0)
    ORDER_BUDGET: int = Field(default=5040, gt=0)

    MODULAR_PRIME: int = Field(default=2_147_483_647)
    SEED: int = Field(default=0)
    # seeded exact perturbations re-classified per class in the endos report
    PERTURBATIONS: int = Field(default=2, ge=0)

    # rationals as strings, "3/2" is fine
    VARIANT_U1: str = Field(default="0")
    VARIANT_U2: str = Field(default="1")

    @computed_field  # type: ignore
    @property
    def VARIANT(self) -> tuple[Any, Any]:
        return (QQ.from_sympy(Rational(self.VARIANT_U1)), QQ.from_sympy(Rational(self.VARIANT_U2)))
