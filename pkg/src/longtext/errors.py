"""Exception types raised across the toolkit."""

from __future__ import annotations


class RecordError(ValueError):
    """A malformed input record; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConfigError(ValueError):
    """Invalid configuration; ``path`` points at the offending field."""

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ClassificationError(ValueError):
    """A threshold predicate referenced a metric that is not computable."""

    def __init__(self, metric: str, document_id: str | None = None):
        self.metric = metric
        self.document_id = document_id
        where = f" for document {document_id!r}" if document_id else ""
        super().__init__(f"metric {metric!r} is not computable{where}")


class ScorerError(RuntimeError):
    """A model scorer failed or violated its contract."""
