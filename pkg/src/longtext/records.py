"""Core record types shared across the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, fields

LANGUAGES = ("EN", "ZH")

CATEGORIES = ("holistic", "aggregated", "chaotic")

# Canonical metric order, used for serialization and feature matrices.
METRIC_NAMES = (
    "coherence_acc_l",
    "coherence_acc_s",
    "coherence_diff",
    "cohesion_conn",
    "cohesion_pron",
    "cohesion_dmr",
    "complexity_ttr",
    "complexity_para",
)


def canonical_language(value: str) -> str:
    lang = str(value).upper()
    if lang not in LANGUAGES:
        raise ValueError(f"unsupported language {value!r}; expected one of {LANGUAGES}")
    return lang


@dataclass
class Document:
    """One corpus entry. ``byte_len`` is always the UTF-8 length of ``text``."""

    id: str
    text: str
    domain: str
    language: str
    byte_len: int = field(init=False)

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("document id must be nonempty")
        self.language = canonical_language(self.language)
        self.byte_len = len(self.text.encode("utf-8"))


@dataclass
class MetricVector:
    """The eight quality scores for one document; ``None`` marks not-computable."""

    coherence_acc_l: float | None = None
    coherence_acc_s: float | None = None
    coherence_diff: float | None = None
    cohesion_conn: float | None = None
    cohesion_pron: float | None = None
    cohesion_dmr: float | None = None
    complexity_ttr: float | None = None
    complexity_para: float | None = None

    def get(self, name: str) -> float | None:
        if name not in METRIC_NAMES:
            raise KeyError(f"unknown metric {name!r}")
        return getattr(self, name)

    def as_dict(self) -> dict[str, float | None]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, values: dict[str, float | None]) -> "MetricVector":
        unknown = set(values) - set(METRIC_NAMES)
        if unknown:
            raise KeyError(f"unknown metric names {sorted(unknown)}")
        return cls(**values)


@dataclass
class ScoredDocument:
    """A document plus its metrics; ``category`` is set only after classification.

    ``token_count`` carries the active tokenizer's token total so downstream
    aggregation and mixture building do not have to re-tokenize.
    """

    document: Document
    metrics: MetricVector
    category: str | None = None
    token_count: int | None = None

    def __post_init__(self) -> None:
        if self.category is not None and self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
