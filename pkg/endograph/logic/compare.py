"""compare: invariants that tell two graph algebras apart."""

from pathlib import Path

from endograph import request_dto, response_dto
from endograph.algebra.sullivan import formal_dimension
from endograph.construction.mg import VERTEX_DEGREE
from endograph.logic import common, endos


def invariants(path: Path, config: request_dto.PipelineConfig) -> response_dto.Invariants:
    mg = common.mg_for(common.load_graph(path), config)
    classification, group = endos.classify(mg, config)
    return response_dto.Invariants(
        graph=common.graph_name(path),
        generators=len(mg.generators),
        dim_40=len(mg.algebra.basis(VERTEX_DEGREE, config.monomial_budget)),
        formal_dimension=formal_dimension(mg.algebra),
        class_count=classification.count,
        equivalence_order=group.order,
    )


def run(data: request_dto.Compare) -> response_dto.Compare:
    return response_dto.Compare(
        first=invariants(data.first_path, data.config),
        second=invariants(data.second_path, data.config),
    )
