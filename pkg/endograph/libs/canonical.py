"""Canonical JSON: sorted keys, compact separators, so equal documents are equal bytes."""

import hashlib
import json
from typing import Any

from pydantic import BaseModel


def canonical_json(document: Any) -> str:
    if isinstance(document, BaseModel):
        document = document.model_dump(mode="json")
    return json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(document: Any) -> str:
    """sha256 of the canonical JSON of a document."""
    return hashlib.sha256(canonical_json(document).encode("utf-8")).hexdigest()
