"""aut: the automorphism group of a graph file."""

from endograph import request_dto, response_dto
from endograph.graph.automorphism import as_label_map, automorphism_group
from endograph.graph.perm_group import format_cycles
from endograph.logic import common


def run(data: request_dto.Aut) -> response_dto.Aut:
    graph = common.load_graph(data.graph_path)
    group = automorphism_group(graph, vertex_budget=data.config.vertex_budget)
    permutations = []
    for perm in group.elements:
        moved = [f"{v}->{w}" for v, w in as_label_map(graph, perm).items() if v != w]
        permutations.append(",".join(moved) or "id")
    return response_dto.Aut(
        graph=common.graph_name(data.graph_path),
        vertices=list(graph.vertices),
        order=group.order,
        permutations=permutations,
        generators=[format_cycles(perm) for perm in group.small_generating_set()],
    )
