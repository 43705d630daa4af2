"""Exception types shared across the package.

``DomainError`` subclasses are precondition violations on otherwise well-formed
input; the CLI maps them to exit status 1.  ``StructuralError`` means the
tables themselves are malformed.
"""

from __future__ import annotations

from typing import Any


class DomainError(Exception):
    """A precondition of an operation is violated."""

    stage = "domain"

    def __init__(self, message: str, witness: Any = None, stage: str | None = None):
        super().__init__(message)
        self.witness = witness
        if stage is not None:
            self.stage = stage

    def to_dict(self) -> dict:
        return {"stage": self.stage, "error": str(self), "witness": _jsonable(self.witness)}


class StructuralError(DomainError):
    """A table is missing, has the wrong length, or holds an out-of-range index."""

    stage = "structure"

    def __init__(self, table: str, index: Any, message: str | None = None):
        super().__init__(message or f"table {table!r}: index {index!r} out of range",
                         witness={"table": table, "index": index})
        self.table = table
        self.index = index


class NotSkeletalError(DomainError):
    stage = "skeletal"


class NotNormalError(DomainError):
    stage = "normal"


class SectionError(DomainError):
    stage = "section"


class OracleBoundExceeded(DomainError):
    stage = "oracle"


class DepthError(DomainError):
    stage = "depth"


class EnumerationLimit(DomainError):
    stage = "coset-enumeration"


class GeneratorSpecError(DomainError):
    stage = "generate"


def _jsonable(value: Any) -> Any:
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value
