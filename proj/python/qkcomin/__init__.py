"""Exact quantum K-theory of Grassmannians."""

from ._core import BoxError, Engine, SchemaError, ingest, normalize_laurent

__all__ = ["BoxError", "Engine", "SchemaError", "ingest", "normalize_laurent"]
