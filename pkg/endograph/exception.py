class ParseError(Exception):
    """Malformed graph, group, algebra or element text."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class ValidationError(Exception):
    """Well-formed input that violates a structural requirement (loops, duplicate edges, bad variant)."""


class PreconditionError(Exception):
    """An operation was called on input outside its domain (disconnected graph, non-closed cocycle)."""


class DomainMismatch(Exception):
    """Elements or morphisms over different generator sets were combined."""


class ResourceLimit(Exception):
    """A configured budget (monomials, Groebner pairs, vertices, group order) was exceeded."""


class IncompleteCaseTree(Exception):
    """The case tree is partial: the split budget ran out or a branch got stuck."""


class ClassificationMismatch(Exception):
    """A morphism did not fall into any computed homotopy class."""


class VerificationFailure(Exception):
    """A self-check of a construction failed (Frucht graph, case tree replay, isomorphism witness)."""


class InternalInvariantError(Exception):
    """A regression assertion on a computed structure failed."""
