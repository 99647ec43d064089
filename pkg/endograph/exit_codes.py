"""
Process exit codes. Every domain exception maps to one code; the handler turns an exception into an error report
that is printed like any other report.

    0 success, 2 parse, 3 validation or precondition, 4 resource limit or incomplete case tree,
    5 internal invariant, classification mismatch or failed verification
"""

from endograph import exception, response_dto, logging
from endograph.libs import case_utils

OK = 0
PARSE = 2
VALIDATION = 3
RESOURCE = 4
INTERNAL = 5

exit_codes: dict[type[Exception], int] = {
    exception.ParseError: PARSE,
    exception.ValidationError: VALIDATION,
    exception.PreconditionError: VALIDATION,
    exception.DomainMismatch: VALIDATION,
    exception.ResourceLimit: RESOURCE,
    exception.IncompleteCaseTree: RESOURCE,
    exception.ClassificationMismatch: INTERNAL,
    exception.VerificationFailure: INTERNAL,
    exception.InternalInvariantError: INTERNAL,
}


def exit_code(exc: Exception) -> int:
    for kind in type(exc).__mro__:
        if kind in exit_codes:
            return exit_codes[kind]
    return INTERNAL


def error_report(exc: Exception) -> response_dto.Error:
    """Error report, code and name get filled in from the exception type."""
    code = exit_code(exc)
    name = case_utils.camel_to_snake(type(exc).__name__)
    if code == INTERNAL:
        logging.error(f"{name}: {exc}")
    return response_dto.Error(error=name, message=str(exc) or case_utils.snake_to_words(name), exit_code=code)

