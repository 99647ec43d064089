"""frucht: a graph realizing the group of a group file."""

from endograph import request_dto, response_dto
from endograph.graph.formats import dump_graph
from endograph.graph.frucht import frucht_graph
from endograph.logic import common


def run(data: request_dto.Frucht) -> response_dto.Frucht:
    group_input = common.load_group(data.group_path)
    graph = frucht_graph(group_input.group, group_input.generators, vertex_budget=data.config.vertex_budget)
    return response_dto.Frucht(
        group_order=group_input.group.order,
        vertices=len(graph),
        edges=len(graph.sorted_edges),
        # frucht_graph raises instead of returning an unverified graph
        verified=True,
        graph=dump_graph(graph),
    )
