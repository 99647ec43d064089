"""Collection of functional like tools"""
from typing import Any, Iterable, TypeVar

T = TypeVar("T")


def exactly_one_not_none(iterable_: Iterable[Any]) -> bool:
    """Is exactly one non-none element in my iterable?"""
    return 1 == sum(1 for x in iterable_ if x is not None)


def first_not_none(iterable_: Iterable[T | None], default: T) -> T:
    """First element that is not None, `default` when there is none."""
    return next((x for x in iterable_ if x is not None), default)
