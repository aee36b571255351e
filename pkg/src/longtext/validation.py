"""Input validation helpers for the estimator layer."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from sklearn.utils.validation import check_array

from .records import METRIC_NAMES, Document, MetricVector


def as_documents(X: Iterable, language: str | None = None) -> list[Document]:
    """Normalize estimator input into documents.

    Accepts Document instances, record dicts with id/text/domain/language,
    or raw strings (which require a ``language`` and get synthesized ids).
    """
    docs: list[Document] = []
    for i, item in enumerate(X):
        if isinstance(item, Document):
            docs.append(item)
        elif isinstance(item, dict):
            docs.append(
                Document(
                    id=str(item.get("id", i)),
                    text=item["text"],
                    domain=str(item.get("domain", "unknown")),
                    language=item.get("language", language or ""),
                )
            )
        elif isinstance(item, str):
            if language is None:
                raise ValueError(
                    "raw string input needs the estimator's `language` parameter"
                )
            docs.append(Document(id=str(i), text=item, domain="unknown", language=language))
        else:
            raise TypeError(f"cannot interpret {type(item).__name__} as a document")
    return docs


def metrics_to_row(metrics: MetricVector) -> list[float]:
    return [np.nan if v is None else float(v) for v in metrics.as_dict().values()]


def row_to_metrics(row: Sequence[float]) -> MetricVector:
    values = {
        name: (None if not np.isfinite(v) else float(v))
        for name, v in zip(METRIC_NAMES, row)
    }
    return MetricVector.from_dict(values)


def check_metric_matrix(X) -> np.ndarray:
    """Validate a numeric (n_samples, 8) metric matrix; NaN marks not-computable."""
    X = check_array(X, dtype=np.float64, ensure_all_finite=False)
    if X.shape[1] != len(METRIC_NAMES):
        raise ValueError(
            f"expected {len(METRIC_NAMES)} metric columns in the order {METRIC_NAMES}, "
            f"got {X.shape[1]}"
        )
    return X
