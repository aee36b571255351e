"""Aggregate corpus statistics and histogram data.

Aggregation is exact integer counting over (domain, category) cells and
token-length buckets. The default bucket edges, in tokens, follow the
familiar long-context length tiers (4K through 128K); interior-edge values
land in the upper bucket to match the classifier's half-open convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .records import CATEGORIES, ScoredDocument

DEFAULT_BUCKET_EDGES = (4096, 8192, 16384, 32768, 49152, 65536, 98304, 131072)


@dataclass
class CellCount:
    doc_count: int = 0
    token_count: int = 0

    def add(self, tokens: int, docs: int = 1) -> None:
        self.doc_count += docs
        self.token_count += tokens


@dataclass
class StatsReport:
    by_domain_category: dict[tuple[str, str], CellCount] = field(default_factory=dict)
    by_bucket: list[tuple[float, float, CellCount]] = field(default_factory=list)
    total_docs: int = 0
    total_tokens: int = 0

    def cell(self, domain: str, category: str) -> CellCount:
        return self.by_domain_category.setdefault((domain, category), CellCount())

    def category_shares(self) -> dict[str, dict[str, float]]:
        """Share of documents and tokens per category; zero totals give zero shares."""
        shares: dict[str, dict[str, float]] = {}
        for category in CATEGORIES:
            docs = sum(c.doc_count for (_, cat), c in self.by_domain_category.items() if cat == category)
            tokens = sum(c.token_count for (_, cat), c in self.by_domain_category.items() if cat == category)
            shares[category] = {
                "doc_share": docs / self.total_docs if self.total_docs else 0.0,
                "token_share": tokens / self.total_tokens if self.total_tokens else 0.0,
            }
        return shares

    def as_dict(self) -> dict:
        domains: dict[str, dict[str, dict[str, int]]] = {}
        for (domain, category), cell in sorted(self.by_domain_category.items()):
            domains.setdefault(domain, {})[category] = {
                "doc_count": cell.doc_count,
                "token_count": cell.token_count,
            }
        return {
            "totals": {"doc_count": self.total_docs, "token_count": self.total_tokens},
            "domains": domains,
            "category_shares": self.category_shares(),
            "length_buckets": [
                {
                    "lo": lo,
                    "hi": None if math.isinf(hi) else hi,
                    "doc_count": cell.doc_count,
                    "token_count": cell.token_count,
                }
                for lo, hi, cell in self.by_bucket
            ],
        }

    def render_text(self) -> str:
        lines = [f"documents: {self.total_docs}   tokens: {self.total_tokens}"]
        shares = self.category_shares()
        for category in CATEGORIES:
            s = shares[category]
            lines.append(
                f"  {category:<10} docs {s['doc_share']:7.2%}   tokens {s['token_share']:7.2%}"
            )
        lines.append("per domain:")
        for (domain, category), cell in sorted(self.by_domain_category.items()):
            lines.append(
                f"  {domain:<16} {category:<10} docs {cell.doc_count:>10} tokens {cell.token_count:>14}"
            )
        lines.append("length buckets (tokens):")
        for lo, hi, cell in self.by_bucket:
            hi_text = "inf" if math.isinf(hi) else f"{int(hi)}"
            lines.append(
                f"  [{int(lo):>7}, {hi_text:>7}) docs {cell.doc_count:>10} tokens {cell.token_count:>14}"
            )
        return "\n".join(lines)


def _bucket_bounds(edges: Sequence[int]) -> list[tuple[float, float]]:
    if len(edges) < 1 or list(edges) != sorted(set(edges)):
        raise ValueError("bucket edges must be strictly ascending")
    bounds = [(0.0, float(edges[0]))]
    bounds += [(float(a), float(b)) for a, b in zip(edges, edges[1:])]
    bounds.append((float(edges[-1]), float("inf")))
    return bounds


def aggregate(
    labeled: Iterable[ScoredDocument],
    token_counts: Mapping[str, int] | None = None,
    bucket_edges: Sequence[int] = DEFAULT_BUCKET_EDGES,
) -> StatsReport:
    """Count documents and tokens per (domain, category) and length bucket.

    Token counts come from ``token_counts[id]`` when given, otherwise from
    each document's ``token_count`` field. Every document must carry a
    category and a token count.
    """
    bounds = _bucket_bounds(bucket_edges)
    report = StatsReport(by_bucket=[(lo, hi, CellCount()) for lo, hi in bounds])
    for scored in labeled:
        doc_id = scored.document.id
        if scored.category is None:
            raise ValueError(f"document {doc_id!r} has no category")
        if token_counts is not None:
            tokens = token_counts.get(doc_id)
        else:
            tokens = scored.token_count
        if tokens is None:
            raise ValueError(f"document {doc_id!r} has no token count")
        report.cell(scored.document.domain, scored.category).add(tokens)
        for lo, hi, cell in report.by_bucket:
            if lo <= tokens < hi:
                cell.add(tokens)
                break
        report.total_docs += 1
        report.total_tokens += tokens
    return report


@dataclass
class HistogramData:
    """Per-bin counts over half-open bins, with explicit under/overflow bins."""

    metric: str
    edges: list[float]
    counts: list[int]  # len(edges)+1: underflow, interior bins, overflow
    category_counts: list[dict[str, int]] | None = None

    def rows(self) -> list[tuple[float, float, int]]:
        bounds = [float("-inf")] + list(self.edges) + [float("inf")]
        return [(bounds[i], bounds[i + 1], c) for i, c in enumerate(self.counts)]

    def render_csv(self) -> str:
        header = "edge_lo,edge_hi,count"
        if self.category_counts is not None:
            header += "," + ",".join(CATEGORIES)
        lines = [header]
        for i, (lo, hi, count) in enumerate(self.rows()):
            row = f"{lo},{hi},{count}"
            if self.category_counts is not None:
                row += "," + ",".join(str(self.category_counts[i].get(c, 0)) for c in CATEGORIES)
            lines.append(row)
        return "\n".join(lines) + "\n"


def histogram(
    values: Iterable[float | None],
    edges: Sequence[float],
    metric: str = "",
    categories: Iterable[str | None] | None = None,
) -> HistogramData:
    """Bin finite values into [e_i, e_i+1); None/NaN values are dropped."""
    edges = [float(e) for e in edges]
    if len(edges) < 2 or edges != sorted(set(edges)):
        raise ValueError("need at least two strictly ascending edges")
    n_bins = len(edges) + 1
    counts = [0] * n_bins
    cat_list = list(categories) if categories is not None else None
    category_counts = [dict() for _ in range(n_bins)] if cat_list is not None else None

    def bin_index(v: float) -> int:
        if v < edges[0]:
            return 0
        if v >= edges[-1]:
            return n_bins - 1
        lo, hi = 0, len(edges) - 1
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if v >= edges[mid]:
                lo = mid
            else:
                hi = mid
        return lo + 1

    for i, value in enumerate(values):
        if value is None or not math.isfinite(value):
            continue
        b = bin_index(float(value))
        counts[b] += 1
        if category_counts is not None and cat_list is not None and cat_list[i] is not None:
            category_counts[b][cat_list[i]] = category_counts[b].get(cat_list[i], 0) + 1
    return HistogramData(metric=metric, edges=edges, counts=counts, category_counts=category_counts)
