"""
realize: group file -> Frucht graph -> graph algebra -> classification -> self-equivalence group -> tilde degrees.

A stage that runs out of budget or fails a self-check ends the pipeline; the report keeps what was computed so far
and names the stage, and the exit code is the one of the exception.
"""

from typing import Any

from endograph import request_dto, response_dto, exit_codes, logging
from endograph.exception import (
    ClassificationMismatch,
    IncompleteCaseTree,
    InternalInvariantError,
    PreconditionError,
    ResourceLimit,
    VerificationFailure,
)
from endograph.algebra.codec import algebra_to_json
from endograph.graph.formats import dump_graph
from endograph.graph.frucht import frucht_graph
from endograph.graph.perm_group import format_cycles, groups_isomorphic
from endograph.libs import canonical
from endograph.logic import common, endos
from endograph.solver.inflexibility import is_inflexible

STAGE_ERRORS = (
    ResourceLimit,
    IncompleteCaseTree,
    PreconditionError,
    ClassificationMismatch,
    VerificationFailure,
    InternalInvariantError,
)


def run(data: request_dto.Realize) -> tuple[response_dto.Realize, int]:
    config = data.config
    group_input = common.load_group(data.group_path)
    group = group_input.group
    fields: dict[str, Any] = {"group_order": group.order, "budgets": common.budgets(config)}
    hashes: dict[str, str] = {}
    stage = "frucht"
    try:
        graph = frucht_graph(group, group_input.generators, vertex_budget=config.vertex_budget)
        fields["graph_vertices"] = len(graph)
        hashes["graph"] = canonical.digest(dump_graph(graph))

        stage = "build"
        mg = common.mg_for(graph, config)
        hashes["algebra"] = canonical.digest(algebra_to_json(mg.algebra))

        stage = "classify"
        classification, equivalences = endos.classify(mg, config)
        fields["class_count"] = classification.count
        fields["equivalence_order"] = equivalences.order
        classes = [common.endo_class(cls).model_dump(mode="json") for cls in classification.classes]
        hashes["classes"] = canonical.digest(classes)

        stage = "isomorphism"
        isomorphic, witness = groups_isomorphic(equivalences.group, group)
        if not isomorphic or witness is None:
            raise VerificationFailure("the self-equivalence group is not isomorphic to the input group")
        fields["iso_witness"] = {format_cycles(a): format_cycles(b) for a, b in sorted(witness.items())}

        stage = "tilde"
        certificates = endos.degree_certificates(mg, classification)
        fields["degrees"] = {cert.endo.label: cert.degree for cert in certificates}
        fields["inflexible"] = is_inflexible(certificates)
    except STAGE_ERRORS as err:
        logging.warning(f"realize stopped in stage {stage}: {err}")
        report = response_dto.Realize(**fields, hashes=hashes, failed_stage=stage, failure=str(err))
        return report, exit_codes.exit_code(err)

    report = response_dto.Realize(**fields, hashes=hashes)
    return report, exit_codes.OK if report.complete else exit_codes.INTERNAL
