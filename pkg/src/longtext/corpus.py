"""Newline-delimited record ingestion and emission.

Each record is one JSON object per line, UTF-8, with flat keys:

* ``id``, ``text``, ``domain``, ``language`` (required),
* ``token_count`` (added by the scoring stage),
* ``metrics.<name>`` for the eight metric keys, number or null,
* ``category`` after classification.

Readers are lazy generators; memory stays bounded by in-flight documents.
Document id uniqueness is an input contract enforced where pools are
materialized (mixture building), not during streaming.
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Iterator

from .errors import RecordError
from .records import CATEGORIES, METRIC_NAMES, Document, MetricVector, ScoredDocument

DEFAULT_MIN_BYTES = 32768

_REQUIRED_KEYS = ("id", "text", "domain", "language")


def passes_length_gate(doc: Document, min_bytes: int = DEFAULT_MIN_BYTES) -> bool:
    """True iff the document's UTF-8 byte length strictly exceeds ``min_bytes``."""
    if min_bytes < 0:
        raise ValueError("min_bytes must be non-negative")
    return doc.byte_len > min_bytes


def _parse_line(line: str | bytes, lineno: int) -> dict:
    if isinstance(line, bytes):
        line = line.decode("utf-8")
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"invalid JSON: {exc.msg}", line=lineno) from exc
    if not isinstance(raw, dict):
        raise RecordError("record must be a JSON object", line=lineno)
    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise RecordError(f"missing required key {key!r}", line=lineno)
        if not isinstance(raw[key], str):
            raise RecordError(f"key {key!r} must be a string", line=lineno)
    return raw


def _document_from(raw: dict, lineno: int) -> Document:
    try:
        return Document(id=raw["id"], text=raw["text"], domain=raw["domain"], language=raw["language"])
    except ValueError as exc:
        raise RecordError(str(exc), line=lineno) from exc


def _iter_records(stream: Iterable[str | bytes], skip_errors: bool) -> Iterator[tuple[int, dict]]:
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip() if isinstance(line, str) else line.strip()
        if not stripped:
            continue
        try:
            yield lineno, _parse_line(line, lineno)
        except RecordError:
            if not skip_errors:
                raise


def read_documents(stream: Iterable[str | bytes], skip_errors: bool = False) -> Iterator[Document]:
    """Yield documents in input order; malformed records abort unless skipping."""
    for lineno, raw in _iter_records(stream, skip_errors):
        try:
            yield _document_from(raw, lineno)
        except RecordError:
            if not skip_errors:
                raise


def read_scored(stream: Iterable[str | bytes], skip_errors: bool = False) -> Iterator[ScoredDocument]:
    """Yield scored documents; absent metric keys read as not-computable."""
    for lineno, raw in _iter_records(stream, skip_errors):
        try:
            doc = _document_from(raw, lineno)
            values: dict[str, float | None] = {}
            for name in METRIC_NAMES:
                value = raw.get(f"metrics.{name}")
                if value is not None and not isinstance(value, (int, float)):
                    raise RecordError(f"metrics.{name} must be a number or null", line=lineno)
                values[name] = None if value is None else float(value)
            category = raw.get("category")
            if category is not None and category not in CATEGORIES:
                raise RecordError(f"unknown category {category!r}", line=lineno)
            token_count = raw.get("token_count")
            if token_count is not None and (not isinstance(token_count, int) or token_count < 0):
                raise RecordError("token_count must be a non-negative integer", line=lineno)
            yield ScoredDocument(
                document=doc,
                metrics=MetricVector.from_dict(values),
                category=category,
                token_count=token_count,
            )
        except RecordError:
            if not skip_errors:
                raise


def scored_to_record(scored: ScoredDocument) -> dict:
    doc = scored.document
    record: dict = {"id": doc.id, "text": doc.text, "domain": doc.domain, "language": doc.language}
    if scored.token_count is not None:
        record["token_count"] = scored.token_count
    for name, value in scored.metrics.as_dict().items():
        record[f"metrics.{name}"] = value
    if scored.category is not None:
        record["category"] = scored.category
    return record


def dump_record(record: dict) -> str:
    # Canonical form so identical runs are byte-identical.
    return json.dumps(record, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def write_scored(docs: Iterable[ScoredDocument], sink: IO[str]) -> int:
    """Write one line per document in input order; returns lines written.

    A sink failure aborts immediately; the raised error reports how many
    records were already written.
    """
    written = 0
    for scored in docs:
        try:
            sink.write(dump_record(scored_to_record(scored)) + "\n")
        except OSError as exc:
            raise OSError(f"sink write failed after {written} records: {exc}") from exc
        written += 1
    return written
