"""tilde: the extension killing a top class, from a graph file or from an algebra JSON file and a cocycle."""

import json
from typing import Any

from endograph import request_dto, response_dto, logging
from endograph.exception import ParseError, PreconditionError
from endograph.algebra.codec import algebra_from_json, algebra_to_json, element_from_json
from endograph.algebra.linalg import cohomology_dim
from endograph.algebra.sullivan import SullivanAlgebra, formal_dimension
from endograph.construction.tilde import TildeExtension, tilde_extend
from endograph.logic import common, endos
from endograph.solver.inflexibility import is_inflexible, orientation_reversing

# cohomology is listed for degrees 0..2*top when the top degree is at most this
COHOMOLOGY_TOP = 32


def _element_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"element is not valid JSON: {err.msg}", line=err.lineno) from None


def _load_algebra(data: request_dto.Tilde) -> SullivanAlgebra:
    assert data.algebra_path is not None
    try:
        doc = json.loads(common.read_text(data.algebra_path))
    except json.JSONDecodeError as err:
        raise ParseError(f"algebra file is not valid JSON: {err.msg}", line=err.lineno) from None
    return algebra_from_json(doc)


def _formal_dimension(alg: SullivanAlgebra) -> int | None:
    try:
        return formal_dimension(alg)
    except PreconditionError:
        return None


def cohomology(te: TildeExtension, budget: int | None = None) -> list[int] | None:
    base_top = _formal_dimension(te.base)
    if base_top is None:
        return None
    top = base_top + te.extended.generators.generator(te.y_name).degree
    if top > COHOMOLOGY_TOP:
        logging.debug(f"no cohomology listing up to degree {2 * top}")
        return None
    return [cohomology_dim(te.extended, degree, budget) for degree in range(2 * top + 1)]


def _report(te: TildeExtension, config: request_dto.PipelineConfig, **fields: Any) -> response_dto.Tilde:
    return response_dto.Tilde(
        base_generators=len(te.base.generators),
        y_name=te.y_name,
        y_degree=te.extended.generators.generator(te.y_name).degree,
        cocycle=str(te.x),
        cocycle_nonexact=te.nonexact_verified,
        formal_dimension=_formal_dimension(te.extended),
        minimal=te.minimal,
        fundamental_rep_verified=te.fundamental_rep_verified,
        algebra=algebra_to_json(te.extended),
        budgets=common.budgets(config),
        **fields,
    )


def run(data: request_dto.Tilde) -> response_dto.Tilde:
    config = data.config
    if data.graph_path is not None:
        mg = common.mg_for(common.load_graph(data.graph_path), config)
        # the fundamental cocycle is far above any monomial budget, only the degrees of the extension are known
        top = mg.expected_formal_dimension
        classification, _ = endos.classify(mg, config)
        certificates = endos.degree_certificates(mg, classification)
        return response_dto.Tilde(
            base_generators=len(mg.generators),
            y_degree=top - 1,
            formal_dimension=2 * top - 1,
            budgets=common.budgets(config),
            degrees={cert.endo.label: cert.degree for cert in certificates},
            inflexible=is_inflexible(certificates),
            orientation_reversing=orientation_reversing(certificates),
        )

    alg = _load_algebra(data)
    assert data.cocycle is not None
    x = element_from_json(alg.generators, _element_json(data.cocycle))
    witness = None if data.witness is None else element_from_json(alg.generators, _element_json(data.witness))
    te = tilde_extend(alg, x, witness, budget=config.monomial_budget)
    return _report(te, config, cohomology=cohomology(te, config.monomial_budget))
