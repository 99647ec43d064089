"""
Command request dtos
These describe one command invocation each, built by the router from the parsed command line. They are simple
frozen dataclasses; the only validation done here is the one every command shares (budgets, variant, one input).

PipelineConfig carries what the command line can override in the settings. Nothing writes back into the settings
singleton, so two invocations in one process never see each other's flags.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from sympy import QQ, Rational, SympifyError

from endograph import settings
from endograph.exception import ValidationError
from endograph.libs import functional_utils


def parse_rational(text: str) -> Any:
    try:
        return QQ.from_sympy(Rational(text))
    except (SympifyError, TypeError, ValueError):
        raise ValidationError(f"{text!r} is not a rational number") from None


@dataclass(frozen=True, kw_only=True)
class PipelineConfig:
    variant: tuple[Any, Any] = field(default_factory=lambda: settings.VARIANT)
    monomial_budget: int = field(default_factory=lambda: settings.MONOMIAL_BUDGET)
    groebner_budget: int = field(default_factory=lambda: settings.GROEBNER_BUDGET)
    split_budget: int = field(default_factory=lambda: settings.SPLIT_BUDGET)
    vertex_budget: int = field(default_factory=lambda: settings.VERTEX_BUDGET)
    output_format: Literal["json", "text"] = "json"
    trace: bool = False
    seed: int = field(default_factory=lambda: settings.SEED)
    out: Path | None = None

    def __post_init__(self) -> None:
        for name in ("monomial_budget", "groebner_budget", "split_budget", "vertex_budget"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name.replace('_', ' ')} must be positive")
        if not self.variant[0] and not self.variant[1]:
            raise ValidationError("the variant (u1, u2) must not be (0, 0)")
        if self.output_format not in ("json", "text"):
            raise ValidationError(f"unknown output format {self.output_format!r}")

    @property
    def budgets(self) -> dict[str, int]:
        return {
            "monomial": self.monomial_budget,
            "groebner": self.groebner_budget,
            "split": self.split_budget,
            "vertex": self.vertex_budget,
        }


# build
@dataclass(frozen=True, kw_only=True)
class Build:
    graph_path: Path
    config: PipelineConfig


# endos
@dataclass(frozen=True, kw_only=True)
class Endos:
    graph_path: Path
    config: PipelineConfig


# aut
@dataclass(frozen=True, kw_only=True)
class Aut:
    graph_path: Path
    config: PipelineConfig


# frucht
@dataclass(frozen=True, kw_only=True)
class Frucht:
    group_path: Path
    config: PipelineConfig


# realize
@dataclass(frozen=True, kw_only=True)
class Realize:
    group_path: Path
    config: PipelineConfig


# tilde
@dataclass(frozen=True, kw_only=True)
class Tilde:
    """Either a graph file, or an algebra JSON file with the cocycle (and optionally d^-1 of its square) as JSON."""

    graph_path: Path | None = None
    algebra_path: Path | None = None
    cocycle: str | None = None
    witness: str | None = None
    config: PipelineConfig

    def __post_init__(self) -> None:
        if not functional_utils.exactly_one_not_none([self.graph_path, self.algebra_path]):
            raise ValidationError("tilde needs exactly one of a graph file and an algebra file")
        if self.algebra_path is not None and self.cocycle is None:
            raise ValidationError("an algebra file needs a --cocycle")


# compare
@dataclass(frozen=True, kw_only=True)
class Compare:
    first_path: Path
    second_path: Path
    config: PipelineConfig
