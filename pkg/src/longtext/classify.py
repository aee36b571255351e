"""Two-stage, per-domain threshold classification.

Stage 1 predicates segregate holistic documents; among the rest, stage 2
predicates pick out chaotic ones; whatever remains is aggregated. A stage
passes only when ALL of its predicates pass. Intervals are half-open:
a value exactly at ``lower`` passes an inside predicate, a value exactly at
``upper`` fails it; ``outside`` mode inverts that test to express
"anomalously low or high".

No canonical threshold values ship with the toolkit. The bundled
``thresholds_example.json`` is illustrative; calibrate per domain by
inspecting documents drawn with :func:`sample_around`.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import ClassificationError, ConfigError
from .records import CATEGORIES, METRIC_NAMES, MetricVector, ScoredDocument

MODES = ("inside", "outside")


@dataclass(frozen=True)
class IntervalPredicate:
    metric: str
    lower: float = float("-inf")
    upper: float = float("inf")
    mode: str = "inside"

    def __post_init__(self) -> None:
        if self.metric not in METRIC_NAMES:
            raise ConfigError(f"unknown metric {self.metric!r}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ConfigError("bounds must not be NaN")
        if self.lower > self.upper:
            raise ConfigError(f"inverted bounds: lower {self.lower} > upper {self.upper}")

    def passes(self, value: float) -> bool:
        inside = self.lower <= value < self.upper
        return inside if self.mode == "inside" else not inside


@dataclass(frozen=True)
class DomainThresholds:
    stage1_holistic: tuple[IntervalPredicate, ...]
    stage2_chaotic: tuple[IntervalPredicate, ...]

    def __post_init__(self) -> None:
        if not self.stage1_holistic or not self.stage2_chaotic:
            raise ConfigError("both stages need at least one predicate")


@dataclass(frozen=True)
class ThresholdConfig:
    domains: dict[str, DomainThresholds] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if "default" not in self.domains:
            raise ConfigError("a 'default' domain entry is required", path="domains.default")

    def for_domain(self, domain: str) -> DomainThresholds:
        return self.domains.get(domain, self.domains["default"])


def _metric_value(metrics: MetricVector, predicate: IntervalPredicate) -> float:
    value = metrics.get(predicate.metric)
    if value is None:
        raise ClassificationError(predicate.metric)
    return value


def classify(metrics: MetricVector, domain: str, config: ThresholdConfig) -> str:
    """Return exactly one of holistic / chaotic / aggregated.

    Every metric referenced by the domain's predicates must be computable;
    this is checked up front so the error does not depend on which stage
    would have been evaluated.
    """
    entry = config.for_domain(domain)
    values = {
        p.metric: _metric_value(metrics, p)
        for p in entry.stage1_holistic + entry.stage2_chaotic
    }
    if all(p.passes(values[p.metric]) for p in entry.stage1_holistic):
        return "holistic"
    if all(p.passes(values[p.metric]) for p in entry.stage2_chaotic):
        return "chaotic"
    return "aggregated"


def _parse_bound(raw: object, path: str, default: float) -> float:
    if raw is None:
        return default
    if not isinstance(raw, (int, float)) or isinstance(raw, bool):
        raise ConfigError("bound must be a number or null", path=path)
    return float(raw)


def _parse_predicate(raw: object, path: str) -> IntervalPredicate:
    if not isinstance(raw, dict):
        raise ConfigError("predicate must be an object", path=path)
    unknown = set(raw) - {"metric", "lower", "upper", "mode"}
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", path=path)
    metric = raw.get("metric")
    if metric not in METRIC_NAMES:
        raise ConfigError(f"unknown metric {metric!r}", path=f"{path}.metric")
    try:
        return IntervalPredicate(
            metric=metric,
            lower=_parse_bound(raw.get("lower"), f"{path}.lower", float("-inf")),
            upper=_parse_bound(raw.get("upper"), f"{path}.upper", float("inf")),
            mode=raw.get("mode", "inside"),
        )
    except ConfigError as exc:
        raise ConfigError(str(exc), path=path) from exc


def _parse_stage(raw: object, path: str) -> tuple[IntervalPredicate, ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("stage must be a nonempty array of predicates", path=path)
    return tuple(_parse_predicate(p, f"{path}[{i}]") for i, p in enumerate(raw))


def load_thresholds(source: IO[str] | str) -> ThresholdConfig:
    """Load and validate a threshold config from JSON text or a file object."""
    text = source if isinstance(source, str) else source.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", path=f"line {exc.lineno}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object")
    unknown = set(raw) - {"domains", "note"}
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}")
    domains_raw = raw.get("domains")
    if not isinstance(domains_raw, dict) or not domains_raw:
        raise ConfigError("must be a nonempty object", path="domains")
    domains = {}
    for name, entry in domains_raw.items():
        path = f"domains.{name}"
        if not isinstance(entry, dict):
            raise ConfigError("domain entry must be an object", path=path)
        unknown = set(entry) - {"stage1_holistic", "stage2_chaotic"}
        if unknown:
            raise ConfigError(f"unknown keys {sorted(unknown)}", path=path)
        domains[name] = DomainThresholds(
            stage1_holistic=_parse_stage(entry.get("stage1_holistic"), f"{path}.stage1_holistic"),
            stage2_chaotic=_parse_stage(entry.get("stage2_chaotic"), f"{path}.stage2_chaotic"),
        )
    return ThresholdConfig(domains=domains)


def classify_documents(
    docs: Iterable[ScoredDocument], config: ThresholdConfig
) -> Iterable[ScoredDocument]:
    for scored in docs:
        try:
            scored.category = classify(scored.metrics, scored.document.domain, config)
        except ClassificationError as exc:
            raise ClassificationError(exc.metric, document_id=scored.document.id) from exc
        yield scored


def sample_around(
    scored: Iterable[ScoredDocument],
    metric: str,
    value_range: tuple[float, float],
    k: int,
    seed: int,
) -> list[ScoredDocument]:
    """Uniformly sample up to ``k`` documents whose metric lies in [lo, hi).

    Intended for human threshold calibration: pull a handful of documents
    around a candidate cut point and inspect them. Deterministic for a
    fixed seed and input sequence; returns all candidates when fewer than
    ``k`` are in range.
    """
    if metric not in METRIC_NAMES:
        raise ConfigError(f"unknown metric {metric!r}")
    if k < 1:
        raise ValueError("k must be at least 1")
    lo, hi = value_range
    if not lo < hi:
        raise ValueError(f"empty range [{lo}, {hi})")
    candidates = []
    for doc in scored:
        value = doc.metrics.get(metric)
        if value is not None and lo <= value < hi:
            candidates.append(doc)
    if len(candidates) <= k:
        return candidates
    return random.Random(seed).sample(candidates, k)


def validate_category(value: str) -> str:
    if value not in CATEGORIES:
        raise ValueError(f"unknown category {value!r}")
    return value
