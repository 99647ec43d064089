"""One module per command, each with a `run` that goes: request_dto -> computation -> response_dto"""

from endograph.logic import (
    common,
    build,
    endos,
    aut,
    frucht,
    realize,
    tilde,
    compare,
)
