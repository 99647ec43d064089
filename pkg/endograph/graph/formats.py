"""
Text formats for graphs and groups.

Graph file: one edge per line as two whitespace separated labels, `vertex LABEL` declares a vertex without
forcing an edge, `#` starts a comment.

Group file: a `perms` header followed by one generating permutation per line in cycle notation, or a `table`
header followed by the rows of a multiplication table of 0-based element indices.
"""

from dataclasses import dataclass

from endograph.exception import ParseError, ValidationError
from endograph.graph.graph import Graph
from endograph.graph.perm_group import PermGroup, Perm, parse_cycles, pad, format_cycles


def _lines(text: str) -> list[tuple[int, str]]:
    found = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            found.append((number, line))
    return found


def parse_graph(text: str) -> Graph:
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    seen: dict[tuple[str, str], int] = {}
    for number, line in _lines(text):
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise ParseError("a vertex declaration needs exactly one label", line=number)
            vertices.append(tokens[1])
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected two labels, found {len(tokens)} tokens", line=number)
        v, w = tokens
        if v == w:
            raise ValidationError(f"line {number}: loop at vertex {v}")
        key = (v, w) if v <= w else (w, v)
        if key in seen:
            raise ValidationError(f"line {number}: duplicate edge {v} {w} (first on line {seen[key]})")
        seen[key] = number
        edges.append((v, w))
    if not vertices and not edges:
        raise ParseError("the graph file is empty")
    return Graph.from_edges(edges, vertices)


def dump_graph(graph: Graph) -> str:
    lines = [f"vertex {v}" for v in graph.vertices if graph.degree(v) == 0]
    lines += [f"{v} {w}" for v, w in graph.sorted_edges]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GroupInput:
    group: PermGroup
    generators: tuple[Perm, ...] | None


def parse_group(text: str) -> GroupInput:
    lines = _lines(text)
    if not lines:
        raise ParseError("the group file is empty")
    header_line, header = lines[0]
    body = lines[1:]
    if header == "perms":
        perms = [parse_cycles(line, line=number) for number, line in body]
        degree = max((len(p) for p in perms), default=1)
        generators = tuple(pad(p, degree) for p in perms)
        return GroupInput(group=PermGroup(degree, generators), generators=generators)
    if header == "table":
        rows: list[list[int]] = []
        for number, line in body:
            try:
                rows.append([int(token) for token in line.split()])
            except ValueError:
                raise ParseError("table entries must be integers", line=number) from None
        return GroupInput(group=PermGroup.from_table(rows), generators=None)
    raise ParseError(f"unknown group header {header!r}, expected 'perms' or 'table'", line=header_line)


def dump_group(group: PermGroup) -> str:
    return "perms\n" + "".join(f"{format_cycles(g)}\n" for g in group.generators or (group.identity,))
