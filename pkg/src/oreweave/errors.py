"""Exception hierarchy shared across the package.

Every domain failure raises a subclass of OreweaveError so callers (and the
CLI) can distinguish expected validation problems from genuine bugs.
"""

from __future__ import annotations


class OreweaveError(Exception):
    """Base class for all errors raised by this package."""


class InvalidUriError(OreweaveError):
    """A string does not form an acceptable absolute URI."""


class InvalidTripleError(OreweaveError):
    """A triple is malformed (for example a literal in subject position)."""


class ModelError(OreweaveError):
    """An aggregation, resource map, or lifecycle constraint was violated."""


class ParseError(OreweaveError):
    """A serialized document could not be read back.

    ``line`` is the 1-based line number for line-oriented input, ``offset``
    a byte offset for encoding failures, and ``position`` a (line, column)
    pair for XML input. Whichever is unknown stays None.
    """

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        offset: int | None = None,
        position: tuple[int, int] | None = None,
    ):
        super().__init__(message)
        self.line = line
        self.offset = offset
        self.position = position


class SerializeError(OreweaveError):
    """A value cannot be represented in the requested output format."""


class StoreError(OreweaveError):
    """A map store operation failed."""


class StoreConflictError(StoreError):
    """A second resource map tried to claim an already-described aggregation."""
