"""Entry point of the `endograph` command: parse, run, print the report, return the exit code."""

import sys
from pathlib import Path
from typing import Sequence

from endograph import router, exit_codes, response_dto, logging
from endograph.libs import canonical
from endograph.templates import render


def output(report: response_dto.ResponseDto, output_format: str, out: Path | None) -> None:
    text = render(report) if output_format == "text" else canonical.canonical_json(report) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    output_format, out = "json", None
    try:
        args, config = router.parse(argv)
        output_format, out = config.output_format, config.out
        if config.trace:
            logging.getLogger().setLevel(logging.DEBUG)
        report, code = router.dispatch(args, config)
    except Exception as exc:
        report = exit_codes.error_report(exc)
        code = report.exit_code
    try:
        output(report, output_format, out)
    except OSError as err:
        logging.error(f"cannot write the report: {err}")
        return exit_codes.VALIDATION
    return code


if __name__ == "__main__":
    sys.exit(main())
