"""
The routing of the command line. These are very minimal and serve only for tying everything together. The bulk of
the work is in the logic module.

A request_dto goes in, gets transformed into a response_dto and finally into JSON or a text template that goes out.
┌─────────────┬──────────────────────────────────────────────────────────────────────────────────────────────┐
│             │                                                                                              │
│             │            ┌───────────────┐             ┌────────────────┐           ┌───────────────────┐  │
│ data models │            │  request_dto  │             │  response_dto  │           │ JSON / template   │  │
│             │            └───────────────┘             └────────────────┘           └───────────────────┘  │
│             │            ▲               │             ▲                │           ▲                   │  │
├─────────────┤            │               │             │                │           │                   │  │
│             │            │               ▼             │                ▼           │                   ▼  │
│             │  ┌──────────┐              ┌─────────────┐                ┌─────────────┐          ┌────────┐ │
│ processes   │  │   argv   │              │    logic    │                │  rendering  │          │ stdout │ │
│             │  └──────────┘              └─────────────┘                └─────────────┘          └────────┘ │
│             │                                                                                              │
└─────────────┴──────────────────────────────────────────────────────────────────────────────────────────────┘
"""

import argparse
from pathlib import Path
from typing import Callable, Sequence

from endograph import request_dto, response_dto, settings, logic, exit_codes
from endograph.libs import functional_utils


def _add_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--variant", nargs=2, metavar=("U1", "U2"), help="rational coupling pair, default (0, 1)")
    parser.add_argument("--monomial-budget", type=int, help="largest monomial basis of one degree")
    parser.add_argument("--groebner-budget", type=int, help="most S-pairs of one Groebner run")
    parser.add_argument("--split-budget", type=int, help="deepest case split of the solver")
    parser.add_argument("--vertex-budget", type=int, help="largest graph for automorphism searches")
    parser.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
    parser.add_argument("--trace", action="store_true", help="debug logging and the case tree in reports")
    parser.add_argument("--seed", type=int, help="seed of the randomized self-checks")
    parser.add_argument("--out", type=Path, help="write the report here instead of stdout")


def parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(prog="endograph", description="Graph algebras and their self-maps up to homotopy.")
    commands = root.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("build", "graph algebra, structure checks and ellipticity certificate"),
        ("endos", "homotopy classes of self-maps and the self-equivalence group"),
        ("aut", "automorphism group of a graph"),
    ):
        sub = commands.add_parser(name, help=help_)
        sub.add_argument("graph", type=Path)
        _add_flags(sub)

    for name, help_ in (
        ("frucht", "a graph whose automorphism group is the given group"),
        ("realize", "the whole pipeline from a group to its inflexible realization"),
    ):
        sub = commands.add_parser(name, help=help_)
        sub.add_argument("group", type=Path)
        _add_flags(sub)

    sub = commands.add_parser("tilde", help="the extension killing a top class")
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", type=Path)
    source.add_argument("--algebra", type=Path, help="algebra JSON file")
    sub.add_argument("--cocycle", help="element JSON, a list of [numerator, denominator, [[name, exponent], ...]]")
    sub.add_argument("--witness", help="element JSON whose differential is the square of the cocycle")
    _add_flags(sub)

    sub = commands.add_parser("compare", help="invariants of two graph algebras side by side")
    sub.add_argument("first", type=Path)
    sub.add_argument("second", type=Path)
    _add_flags(sub)
    return root


def pipeline_config(args: argparse.Namespace) -> request_dto.PipelineConfig:
    """Flags that were given override the settings, the rest comes from the settings."""
    if args.variant is not None:
        u1, u2 = args.variant
        variant = (request_dto.parse_rational(u1), request_dto.parse_rational(u2))
    else:
        variant = settings.VARIANT
    return request_dto.PipelineConfig(
        variant=variant,
        monomial_budget=functional_utils.first_not_none([args.monomial_budget], settings.MONOMIAL_BUDGET),
        groebner_budget=functional_utils.first_not_none([args.groebner_budget], settings.GROEBNER_BUDGET),
        split_budget=functional_utils.first_not_none([args.split_budget], settings.SPLIT_BUDGET),
        vertex_budget=functional_utils.first_not_none([args.vertex_budget], settings.VERTEX_BUDGET),
        output_format=args.output_format,
        trace=args.trace,
        seed=functional_utils.first_not_none([args.seed], settings.SEED),
        out=args.out,
    )


def build_get(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    report = logic.build.run(request_dto.Build(graph_path=args.graph, config=config))
    return report, exit_codes.OK if report.ok else exit_codes.INTERNAL


def endos_get(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    return logic.endos.run(request_dto.Endos(graph_path=args.graph, config=config)), exit_codes.OK


def aut_get(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    return logic.aut.run(request_dto.Aut(graph_path=args.graph, config=config)), exit_codes.OK


def frucht_get(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    return logic.frucht.run(request_dto.Frucht(group_path=args.group, config=config)), exit_codes.OK


def realize_get(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    return logic.realize.run(request_dto.Realize(group_path=args.group, config=config))


def tilde_get(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    data = request_dto.Tilde(
        graph_path=args.graph, algebra_path=args.algebra, cocycle=args.cocycle, witness=args.witness, config=config
    )
    return logic.tilde.run(data), exit_codes.OK


def compare_get(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    data = request_dto.Compare(first_path=args.first, second_path=args.second, config=config)
    return logic.compare.run(data), exit_codes.OK


routes: dict[str, Callable[[argparse.Namespace, request_dto.PipelineConfig], tuple[response_dto.ResponseDto, int]]] = {
    "build": build_get,
    "endos": endos_get,
    "aut": aut_get,
    "frucht": frucht_get,
    "realize": realize_get,
    "tilde": tilde_get,
    "compare": compare_get,
}


def parse(argv: Sequence[str] | None = None) -> tuple[argparse.Namespace, request_dto.PipelineConfig]:
    args = parser().parse_args(argv)
    return args, pipeline_config(args)


def dispatch(args: argparse.Namespace, config: request_dto.PipelineConfig) -> tuple[response_dto.ResponseDto, int]:
    return routes[args.command](args, config)
