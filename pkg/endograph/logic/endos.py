"""endos: homotopy classes of self-maps of a graph algebra, the self-equivalence group and the tilde degrees."""

import random

from endograph import request_dto, response_dto, settings, logging
from endograph.exception import ClassificationMismatch
from endograph.construction.mg import MGAlgebra
from endograph.logic import common
from endograph.solver.classify import (
    Classification,
    EndoKind,
    EquivalenceGroup,
    classify_endos,
    classify_homotopy,
    equivalence_group,
    perturb_top,
)
from endograph.solver.inflexibility import DegreeCertificate, degree_certificate, is_inflexible


def degree_certificates(mg: MGAlgebra, classification: Classification) -> list[DegreeCertificate]:
    return [degree_certificate(mg, cls) for cls in classification.classes]


def perturbation_checks(classification: Classification, seed: int, rounds: int, budget: int | None = None) -> int:
    """Re-classifies seeded exact perturbations of every representative, returns the number of checks."""
    rng = random.Random(seed)
    mg = classification.mg
    checks = 0
    for cls in classification.classes:
        for _ in range(rounds):
            perturbed = perturb_top(mg, cls.representative, rng, budget=budget)
            found = classify_homotopy(mg, perturbed, classification.classes, budget)
            if found.key != cls.key:
                raise ClassificationMismatch(f"a perturbation of {cls.label} classified as {found.label}")
            checks += 1
    logging.debug(f"{checks} perturbation checks with seed {seed}")
    return checks


def classify(mg: MGAlgebra, config: request_dto.PipelineConfig) -> tuple[Classification, EquivalenceGroup]:
    classification = classify_endos(mg, split_budget=config.split_budget, budget=config.monomial_budget)
    return classification, equivalence_group(classification, config.monomial_budget)


def run(data: request_dto.Endos) -> response_dto.Endos:
    config = data.config
    mg = common.mg_for(common.load_graph(data.graph_path), config)
    classification, group = classify(mg, config)
    certificates = degree_certificates(mg, classification)
    checks = perturbation_checks(classification, config.seed, settings.PERTURBATIONS, config.monomial_budget)
    tree = classification.tree
    return response_dto.Endos(
        graph=common.graph_name(data.graph_path),
        variant=common.variant(config),
        class_count=classification.count,
        classes=[common.endo_class(cls) for cls in classification.classes],
        automorphism_classes=[cls.label for cls in classification.by_kind(EndoKind.AUTOMORPHISM)],
        constant_classes=[cls.label for cls in classification.by_kind(EndoKind.CONSTANT)],
        collapse_classes=[cls.label for cls in classification.by_kind(EndoKind.COLLAPSE)],
        group_order=group.order,
        iso_witness=group.witness_labels(),
        degrees={cert.endo.label: cert.degree for cert in certificates},
        certificates=[common.degree(cert) for cert in certificates],
        inflexible=is_inflexible(certificates),
        perturbation_checks=checks,
        tree_size=tree.size,
        tree_complete=tree.complete,
        case_tree=common.case_node(tree.root, classification.generic) if config.trace else None,
        seed=config.seed,
        budgets=common.budgets(config),
    )
