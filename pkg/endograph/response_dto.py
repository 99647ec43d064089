"""
Report DTOs. These are the models printed by the commands, as canonical JSON or through a text template. Inheriting
from ResponseDto marks first level objects, i.e. complete reports.

Composition over inheritance: a report holds its parts (budgets, classes, certificates) as nested models so the
text templates can loop over them without extracting anything.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field, computed_field


class ResponseDto(BaseModel):
    """Subclasses of this are complete reports with a text template of the same snake_case name."""


class Budgets(BaseModel):
    monomial: int
    groebner: int
    split: int
    vertex: int


class GeneratorDto(BaseModel):
    name: str
    degree: int
    differential: str


class StructureDto(BaseModel):
    homogeneous: bool
    lower_degree: bool
    filtration: bool
    d_squared_zero: bool
    minimal: bool
    failures: list[str] = Field(default_factory=list)

    @computed_field  # type: ignore
    @property
    def passed(self) -> bool:
        return self.homogeneous and self.lower_degree and self.filtration and self.d_squared_zero and self.minimal


class WitnessDto(BaseModel):
    target: str
    preimage: str


class CertificateDto(BaseModel):
    valid: bool
    nilpotence_exponents: dict[str, int]
    groebner_basis_size: int
    complete_run: bool
    witnesses: list[WitnessDto] = Field(default_factory=list)


class Build(ResponseDto):
    graph: str
    vertices: int
    variant: list[str]
    generators: list[GeneratorDto]
    structure: StructureDto
    certificate: CertificateDto
    formal_dimension: int
    algebra: dict[str, Any]
    algebra_hash: str
    budgets: Budgets

    @computed_field  # type: ignore
    @property
    def ok(self) -> bool:
        return self.structure.passed and self.certificate.valid


class CaseNodeDto(BaseModel):
    tactic: str
    branch: str | None
    detail: dict[str, Any]
    steps: list[str]
    fingerprint: str
    children: list[CaseNodeDto] = Field(default_factory=list)
    solution: dict[str, str] | None = None


CaseNodeDto.model_rebuild()


class EndoClassDto(BaseModel):
    label: str
    kind: str
    s: int
    sigma: str | None = None
    tail: dict[str, list[str]] | None = None
    exact_freedom: int
    leaves: int


class DegreeDto(BaseModel):
    label: str
    scalars: list[int]
    degree: int
    justification: str
    detail: str


class Endos(ResponseDto):
    graph: str
    variant: list[str]
    class_count: int
    classes: list[EndoClassDto]
    automorphism_classes: list[str]
    constant_classes: list[str]
    collapse_classes: list[str]
    group_order: int
    iso_witness: dict[str, str]
    degrees: dict[str, int]
    certificates: list[DegreeDto]
    inflexible: bool
    perturbation_checks: int
    tree_size: int
    tree_complete: bool
    case_tree: CaseNodeDto | None = None
    seed: int
    budgets: Budgets


class Aut(ResponseDto):
    graph: str
    vertices: list[str]
    order: int
    permutations: list[str]
    generators: list[str]


class Frucht(ResponseDto):
    group_order: int
    vertices: int
    edges: int
    verified: bool
    graph: str


class Realize(ResponseDto):
    group_order: int
    graph_vertices: int | None = None
    class_count: int | None = None
    equivalence_order: int | None = None
    iso_witness: dict[str, str] | None = None
    degrees: dict[str, int] | None = None
    inflexible: bool | None = None
    hashes: dict[str, str] = Field(default_factory=dict)
    failed_stage: str | None = None
    failure: str | None = None
    budgets: Budgets

    @computed_field  # type: ignore
    @property
    def complete(self) -> bool:
        return self.failed_stage is None and self.iso_witness is not None and bool(self.inflexible)


class Tilde(ResponseDto):
    """For a graph algebra the top cocycle is not materialized; the report then holds only the dimensions."""

    base_generators: int
    y_name: str | None = None
    y_degree: int
    cocycle: str | None = None
    cocycle_nonexact: bool | None = None
    formal_dimension: int | None
    minimal: bool | None = None
    fundamental_rep_verified: bool = False
    cohomology: list[int] | None = None
    degrees: dict[str, int] | None = None
    inflexible: bool | None = None
    orientation_reversing: list[str] = Field(default_factory=list)
    algebra: dict[str, Any] | None = None
    budgets: Budgets


class Invariants(BaseModel):
    graph: str
    generators: int
    dim_40: int
    formal_dimension: int
    class_count: int
    equivalence_order: int


class Compare(ResponseDto):
    first: Invariants
    second: Invariants

    @computed_field  # type: ignore
    @property
    def differing(self) -> list[str]:
        return [
            name
            for name in ("generators", "dim_40", "formal_dimension", "class_count", "equivalence_order")
            if getattr(self.first, name) != getattr(self.second, name)
        ]

    @computed_field  # type: ignore
    @property
    def distinguished(self) -> bool:
        return bool(self.differing)


class Error(ResponseDto):
    error: str
    message: str
    exit_code: int
