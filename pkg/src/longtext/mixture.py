"""Deterministic training-data mixture manifests.

A recipe names one of four strategies:

* ``all_categories``: every labeled document is eligible.
* ``holistic_only``: holistic documents only.
* ``holistic_plus_aggregated``: drop chaotic documents.
* ``upsample_aggregated``: drop chaotic documents and split each language's
  token budget so aggregated documents fill ``aggregated_target_share`` of
  it, repeating documents once their pool is exhausted.

The token budget is divided between languages by ``language_ratio``
(default 9:1 EN:ZH). Within a language, documents are drawn one at a time:
a domain is picked with probability proportional to its weight, then a
document uniformly from that domain's remaining pool, until the budget is
met. If the pool runs dry first, drawing continues over the full pool with
repetition, bumping ``repeat_count`` until a per-document cap (default 16)
binds. An unattainable target under the cap is recorded as a manifest
warning, not an error. Each fill can overshoot its own budget by at most
one document; the overshoot is deducted from the next fill, so the
realized grand total stays within one document of ``total_tokens``.

Building is a pure function of the recipe and the document multiset:
pools are canonically ordered by document id before any random draw, so
input order never changes the result, and a fixed seed reproduces the
manifest byte for byte.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .corpus import dump_record
from .errors import ConfigError
from .records import CATEGORIES, LANGUAGES, ScoredDocument
from .stats import DEFAULT_BUCKET_EDGES, CellCount, StatsReport, _bucket_bounds

STRATEGIES = (
    "all_categories",
    "holistic_only",
    "holistic_plus_aggregated",
    "upsample_aggregated",
)

_ELIGIBLE = {
    "all_categories": frozenset(CATEGORIES),
    "holistic_only": frozenset({"holistic"}),
    "holistic_plus_aggregated": frozenset({"holistic", "aggregated"}),
    "upsample_aggregated": frozenset({"holistic", "aggregated"}),
}

DEFAULT_REPEAT_CAP = 16


@dataclass(frozen=True)
class MixtureRecipe:
    strategy: str
    total_tokens: int
    seed: int
    language_ratio: tuple[float, float] = (9.0, 1.0)  # EN : ZH
    aggregated_target_share: float = 0.5
    domain_weights: dict[str, dict[str, float]] = field(default_factory=dict)
    repeat_cap: int = DEFAULT_REPEAT_CAP

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}", path="strategy")
        if self.total_tokens <= 0:
            raise ConfigError("total_tokens must be positive", path="total_tokens")
        en, zh = self.language_ratio
        if en < 0 or zh < 0 or en + zh <= 0:
            raise ConfigError("language_ratio parts must be non-negative with a positive sum", path="language_ratio")
        if not 0.0 < self.aggregated_target_share < 1.0:
            raise ConfigError("aggregated_target_share must lie in (0, 1)", path="aggregated_target_share")
        if self.repeat_cap < 1:
            raise ConfigError("repeat_cap must be at least 1", path="repeat_cap")
        for lang, weights in self.domain_weights.items():
            if lang not in LANGUAGES:
                raise ConfigError(f"unknown language {lang!r}", path=f"domain_weights.{lang}")
            if any(w < 0 for w in weights.values()):
                raise ConfigError("weights must be non-negative", path=f"domain_weights.{lang}")
            if weights and not any(w > 0 for w in weights.values()):
                raise ConfigError("at least one weight must be positive", path=f"domain_weights.{lang}")

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "total_tokens": self.total_tokens,
            "seed": self.seed,
            "language_ratio": list(self.language_ratio),
            "aggregated_target_share": self.aggregated_target_share,
            "domain_weights": {k: dict(sorted(v.items())) for k, v in sorted(self.domain_weights.items())},
            "repeat_cap": self.repeat_cap,
        }


def load_recipe(source: IO[str] | str) -> MixtureRecipe:
    text = source if isinstance(source, str) else source.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", path=f"line {exc.lineno}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object")
    known = {
        "strategy",
        "total_tokens",
        "seed",
        "language_ratio",
        "aggregated_target_share",
        "domain_weights",
        "repeat_cap",
        "note",
    }
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}")
    for key in ("strategy", "total_tokens", "seed"):
        if key not in raw:
            raise ConfigError("required", path=key)
    ratio = raw.get("language_ratio", [9, 1])
    if not isinstance(ratio, list) or len(ratio) != 2:
        raise ConfigError("must be a two-element array [EN, ZH]", path="language_ratio")
    weights = raw.get("domain_weights", {})
    if not isinstance(weights, dict):
        raise ConfigError("must be an object", path="domain_weights")
    return MixtureRecipe(
        strategy=raw["strategy"],
        total_tokens=raw["total_tokens"],
        seed=raw["seed"],
        language_ratio=(float(ratio[0]), float(ratio[1])),
        aggregated_target_share=float(raw.get("aggregated_target_share", 0.5)),
        domain_weights={
            lang: {d: float(w) for d, w in (per or {}).items()} for lang, per in weights.items()
        },
        repeat_cap=int(raw.get("repeat_cap", DEFAULT_REPEAT_CAP)),
    )


@dataclass
class ManifestEntry:
    id: str
    repeat_count: int
    tokens: int
    language: str
    domain: str
    category: str


@dataclass
class Manifest:
    entries: list[ManifestEntry]
    recipe: MixtureRecipe
    warnings: list[str] = field(default_factory=list)

    def realized_tokens(self) -> int:
        return sum(e.tokens * e.repeat_count for e in self.entries)

    def realized_by(self, key) -> dict[str, int]:
        totals: dict[str, int] = {}
        for e in self.entries:
            k = key(e)
            totals[k] = totals.get(k, 0) + e.tokens * e.repeat_count
        return totals

    def summary(self) -> dict:
        return {
            "recipe": self.recipe.as_dict(),
            "realized": {
                "total_tokens": self.realized_tokens(),
                "documents": len(self.entries),
                "by_language": dict(sorted(self.realized_by(lambda e: e.language).items())),
                "by_category": dict(sorted(self.realized_by(lambda e: e.category).items())),
                "by_domain": dict(sorted(self.realized_by(lambda e: e.domain).items())),
            },
            "warnings": list(self.warnings),
        }

    def write(self, sink: IO[str]) -> int:
        """Entry lines in selection order, then one trailing summary line."""
        for e in self.entries:
            sink.write(dump_record({"id": e.id, "repeat_count": e.repeat_count}) + "\n")
        sink.write(dump_record({"summary": self.summary()}) + "\n")
        return len(self.entries)


class _DomainPools:
    """Per-domain document pools with weighted domain draws."""

    def __init__(self, docs: Sequence[ManifestEntry], weights: dict[str, float] | None):
        by_domain: dict[str, list[ManifestEntry]] = {}
        for doc in docs:
            by_domain.setdefault(doc.domain, []).append(doc)
        self.domains = sorted(by_domain)
        # No weight map means uniform over the domains actually present.
        self.weights = {
            d: (weights.get(d, 0.0) if weights else 1.0) for d in self.domains
        }
        self.pools = {d: sorted(by_domain[d], key=lambda e: e.id) for d in self.domains}

    def weighted_total(self) -> float:
        return sum(self.weights[d] for d in self.domains if self.pools[d])

    def draw(self, rng: random.Random) -> ManifestEntry | None:
        """Remove and return one document, or None when pools are empty."""
        active = [d for d in self.domains if self.pools[d] and self.weights[d] > 0]
        if not active:
            return None
        domain = rng.choices(active, weights=[self.weights[d] for d in active])[0]
        pool = self.pools[domain]
        j = rng.randrange(len(pool))
        pool[j], pool[-1] = pool[-1], pool[j]
        return pool.pop()


def _fill(
    docs: list[ManifestEntry],
    weights: dict[str, float] | None,
    budget: float,
    rng: random.Random,
    selected: list[ManifestEntry],
    repeat_cap: int,
    warnings: list[str],
    label: str,
) -> int:
    """Draw documents until ``budget`` tokens are reached; returns tokens taken."""
    pools = _DomainPools(docs, weights)
    if pools.weighted_total() <= 0:
        raise ValueError(f"{label}: no documents with positive domain weight")
    taken = 0
    drawn: list[ManifestEntry] = []
    while taken < budget:
        doc = pools.draw(rng)
        if doc is None:
            break
        doc.repeat_count = 1
        drawn.append(doc)
        selected.append(doc)
        taken += doc.tokens
    if taken >= budget:
        return taken

    # Pool exhausted: keep drawing with repetition until the budget is met
    # or every document reaches the repeat cap.
    repeatable = _DomainPools(drawn, weights)
    while taken < budget:
        active = [d for d in repeatable.domains if repeatable.pools[d] and repeatable.weights[d] > 0]
        if not active:
            warnings.append(
                f"{label}: repeat cap {repeat_cap} reached before budget; "
                f"realized {taken} of {budget:.0f} tokens"
            )
            break
        domain = rng.choices(active, weights=[repeatable.weights[d] for d in active])[0]
        pool = repeatable.pools[domain]
        j = rng.randrange(len(pool))
        doc = pool[j]
        doc.repeat_count += 1
        taken += doc.tokens
        if doc.repeat_count >= repeat_cap:
            pool[j], pool[-1] = pool[-1], pool[j]
            pool.pop()
    return taken


def build_manifest(labeled: Iterable[ScoredDocument], recipe: MixtureRecipe) -> Manifest:
    """Sample a deterministic manifest from labeled, token-counted documents."""
    all_docs: list[ManifestEntry] = []
    seen: set[str] = set()
    for scored in labeled:
        doc = scored.document
        if scored.category is None:
            raise ValueError(f"document {doc.id!r} has no category")
        if scored.token_count is None:
            raise ValueError(f"document {doc.id!r} has no token count")
        if doc.id in seen:
            raise ValueError(f"duplicate document id {doc.id!r}")
        seen.add(doc.id)
        all_docs.append(
            ManifestEntry(
                id=doc.id,
                repeat_count=0,
                tokens=scored.token_count,
                language=doc.language,
                domain=doc.domain,
                category=scored.category,
            )
        )

    eligible_categories = _ELIGIBLE[recipe.strategy]
    eligible = [d for d in all_docs if d.category in eligible_categories]

    rng = random.Random(recipe.seed)
    ratio_en, ratio_zh = recipe.language_ratio
    ratio_sum = ratio_en + ratio_zh
    warnings: list[str] = []
    selected: list[ManifestEntry] = []

    # Plan every fill first, then run them with overshoot compensation: a
    # fill that ends past its nominal budget (by at most one document) hands
    # the excess to the next fill's budget, so the realized grand total
    # stays within one document of the recipe's token budget no matter how
    # many languages and categories are filled.
    plan: list[tuple[list[ManifestEntry], float, str, dict[str, float] | None]] = []
    for language, part in (("EN", ratio_en), ("ZH", ratio_zh)):
        budget = recipe.total_tokens * part / ratio_sum
        if budget <= 0:
            continue
        lang_docs = [d for d in eligible if d.language == language]
        if not lang_docs:
            raise ValueError(f"no eligible documents for required language {language}")
        weights = recipe.domain_weights.get(language) or None

        if recipe.strategy == "upsample_aggregated":
            holistic = [d for d in lang_docs if d.category == "holistic"]
            aggregated = [d for d in lang_docs if d.category == "aggregated"]
            share = recipe.aggregated_target_share
            fills = [
                (holistic, (1.0 - share) * budget, f"{language}/holistic", weights),
                (aggregated, share * budget, f"{language}/aggregated", weights),
            ]
            # An empty sub-pool reallocates its budget to the other side so
            # the overall budget is still honored.
            if not aggregated:
                warnings.append(f"{language}: no aggregated documents; target share unattainable")
                fills = [(holistic, budget, f"{language}/holistic", weights)]
            elif not holistic:
                warnings.append(f"{language}: no holistic documents; budget filled from aggregated")
                fills = [(aggregated, budget, f"{language}/aggregated", weights)]
            plan.extend(fills)
        else:
            plan.append((lang_docs, budget, language, weights))

    carried_overshoot = 0.0
    for docs, nominal_budget, label, weights in plan:
        budget = nominal_budget - carried_overshoot
        if budget <= 0:
            carried_overshoot = -budget
            continue
        taken = _fill(docs, weights, budget, rng, selected, recipe.repeat_cap, warnings, label)
        # shortfalls (cap or empty pool) are warned about, never rolled forward
        carried_overshoot = max(0.0, taken - budget)

    return Manifest(entries=selected, recipe=recipe, warnings=warnings)


def summarize_manifest(manifest: Manifest, bucket_edges=None) -> StatsReport:
    """Stats over the realized mixture.

    Token totals count each document ``repeat_count`` times; length buckets
    place a document by its own length, weighting its token contribution by
    the repeats.
    """
    bounds = _bucket_bounds(bucket_edges or DEFAULT_BUCKET_EDGES)
    report = StatsReport(by_bucket=[(lo, hi, CellCount()) for lo, hi in bounds])
    for e in manifest.entries:
        weighted = e.tokens * e.repeat_count
        report.cell(e.domain, e.category).add(weighted)
        for lo, hi, cell in report.by_bucket:
            if lo <= e.tokens < hi:
                cell.add(weighted)
                break
        report.total_docs += 1
        report.total_tokens += weighted
    return report
