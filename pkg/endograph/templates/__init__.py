"""Loading the jinja templates for the text reports."""

from functools import cache
from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from endograph import response_dto
from endograph.libs import case_utils


template_directory: Path = Path(__file__).parent


@cache
def jinja_templates() -> Environment:
    """lazyloading jinja templates"""
    return Environment(
        loader=FileSystemLoader(template_directory),
        undefined=StrictUndefined,
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )


def template_path(context: response_dto.ResponseDto) -> Path:
    """Every report renders through the template named after its class: Endos -> endos.txt"""
    return Path(f"{case_utils.camel_to_snake(type(context).__name__)}.txt")


def render(context: response_dto.ResponseDto, path: Path | None = None) -> str:
    """Function to render the templates with the given data."""
    path = template_path(context) if path is None else path
    full_path = Path.joinpath(template_directory, path)
    assert full_path.exists(), f"Path {full_path} doesn't exist"
    assert isinstance(context, response_dto.ResponseDto)
    return jinja_templates().get_template(path.as_posix()).render(**context.model_dump(mode="json"))
