"""build: the graph algebra of a graph file, its structure checks and its ellipticity certificate."""

from endograph import request_dto, response_dto, logging
from endograph.algebra.codec import algebra_to_json
from endograph.algebra.sullivan import check_structure, formal_dimension
from endograph.construction.ellipticity import ellipticity_certificate
from endograph.libs import canonical
from endograph.logic import common


def run(data: request_dto.Build) -> response_dto.Build:
    graph = common.load_graph(data.graph_path)
    mg = common.mg_for(graph, data.config)
    report = check_structure(mg.algebra)
    cert = ellipticity_certificate(mg, budget=data.config.groebner_budget)
    dimension = formal_dimension(mg.algebra)
    if dimension != mg.expected_formal_dimension:
        logging.warning(f"formal dimension {dimension}, expected {mg.expected_formal_dimension}")
    algebra = algebra_to_json(mg.algebra)
    return response_dto.Build(
        graph=common.graph_name(data.graph_path),
        vertices=len(mg.vertices),
        variant=common.variant(data.config),
        generators=common.generators(mg),
        structure=response_dto.StructureDto(
            homogeneous=report.homogeneous,
            lower_degree=report.lower_degree,
            filtration=report.filtration,
            d_squared_zero=report.d_squared_zero,
            minimal=report.minimal,
            failures=report.failures,
        ),
        certificate=common.certificate(cert),
        formal_dimension=dimension,
        algebra=algebra,
        algebra_hash=canonical.digest(algebra),
        budgets=common.budgets(data.config),
    )
