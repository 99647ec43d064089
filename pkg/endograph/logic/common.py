"""Reading input files and turning domain objects into report parts, shared by the commands."""

from pathlib import Path
from typing import Any

from endograph import request_dto, response_dto
from endograph.exception import ParseError
from endograph.construction.ellipticity import EllipticityCertificate
from endograph.construction.mg import MGAlgebra, build_mg
from endograph.graph import formats
from endograph.graph.graph import Graph
from endograph.solver.ansatz import GenericMorphism
from endograph.solver.case_tree import CaseNode
from endograph.solver.classify import EndoClass
from endograph.solver.inflexibility import DegreeCertificate


def read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise ParseError(f"cannot read {path}: {err}") from None


def load_graph(path: Path) -> Graph:
    return formats.parse_graph(read_text(path))


def load_group(path: Path) -> formats.GroupInput:
    return formats.parse_group(read_text(path))


def mg_for(graph: Graph, config: request_dto.PipelineConfig) -> MGAlgebra:
    u1, u2 = config.variant
    return build_mg(graph, u1, u2)


def variant(config: request_dto.PipelineConfig) -> list[str]:
    return [str(u) for u in config.variant]


def budgets(config: request_dto.PipelineConfig) -> response_dto.Budgets:
    return response_dto.Budgets(**config.budgets)


def graph_name(path: Path) -> str:
    return Path(path).stem


def generators(mg_or_alg: Any) -> list[response_dto.GeneratorDto]:
    alg = getattr(mg_or_alg, "algebra", mg_or_alg)
    return [
        response_dto.GeneratorDto(name=gen.name, degree=gen.degree, differential=str(alg.d_generator(gen.name)))
        for gen in alg.generators
    ]


def certificate(cert: EllipticityCertificate) -> response_dto.CertificateDto:
    return response_dto.CertificateDto(
        valid=cert.valid,
        nilpotence_exponents=dict(cert.nilpotence_exponents),
        groebner_basis_size=len(cert.groebner_basis),
        complete_run=cert.complete_run,
        witnesses=[response_dto.WitnessDto(target=str(w.target), preimage=str(w.preimage)) for w in cert.witnesses],
    )


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


def case_node(node: CaseNode, generic: GenericMorphism) -> response_dto.CaseNodeDto:
    solution = None
    if node.solution is not None:
        solution = {generic.name(var): value.format(generic.name) for var, value in sorted(node.solution.items())}
    return response_dto.CaseNodeDto(
        tactic=node.tactic.value,
        branch=None if node.branch is None else node.branch.label,
        detail=_jsonable(node.detail),
        steps=list(node.steps),
        fingerprint=node.fingerprint,
        children=[case_node(child, generic) for child in node.children],
        solution=solution,
    )


def endo_class(cls: EndoClass) -> response_dto.EndoClassDto:
    return response_dto.EndoClassDto(
        label=cls.label,
        kind=cls.kind.value,
        s=cls.s,
        sigma=None if cls.sigma is None else ",".join(f"{v}->{w}" for v, w in sorted(cls.sigma.items())),
        tail=None if cls.tail is None else {v: [str(p), str(q)] for v, (p, q) in sorted(cls.tail.items())},
        exact_freedom=len(cls.exact_freedom),
        leaves=cls.leaves,
    )


def degree(cert: DegreeCertificate) -> response_dto.DegreeDto:
    return response_dto.DegreeDto(
        label=cert.endo.label,
        scalars=list(cert.scalars),
        degree=cert.degree,
        justification=cert.justification,
        detail=cert.detail,
    )
