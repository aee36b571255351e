"""Windowed coherence metrics against a pluggable language-model scorer.

A document's token stream is cut into ``floor(n/w)`` windows of size ``w``
(trailing remainder discarded). Window ``i`` (1-based) is split into

* ``x_l`` = tokens[(i-1)w : iw - w/4), the long context (3w/4 tokens),
* ``x_s`` = tokens[iw - w/2 : iw - w/4), the short context (w/4 tokens,
  a suffix of ``x_l``),
* ``y``   = tokens[iw - w/4 : iw), the continuation to predict (w/4 tokens).

Per window the scorer reports mean top-1 accuracy and mean per-token
negative log-likelihood (nats) of ``y`` given each context. The document
metrics are plain means over windows, in ascending window order:

* ``acc_l``: mean accuracy with the long context,
* ``acc_s``: mean accuracy with the short context,
* ``diff``: mean of ``(nll_l - nll_s) / nll_l``. With the
  ``diff_sign="improvement"`` flag the numerator is negated, yielding
  ``(nll_s - nll_l) / nll_l``, and nothing else changes.

If any window has ``nll_l == 0`` the ratio is undefined and ``diff`` is
not-computable for the document.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

from .errors import ScorerError
from .tokenization import TokenSequence

DIFF_SIGNS = ("as_printed", "improvement")
DEFAULT_WINDOW_SIZE = 4096


@dataclass(frozen=True)
class ScoreResult:
    mean_top1_acc: float
    mean_nll: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.mean_top1_acc <= 1.0:
            raise ScorerError(f"mean_top1_acc out of [0,1]: {self.mean_top1_acc}")
        if not math.isfinite(self.mean_nll) or self.mean_nll < 0.0:
            raise ScorerError(f"mean_nll must be finite and non-negative: {self.mean_nll}")


class LMScorer(Protocol):
    """Deterministic next-token scorer.

    ``score`` must accept any nonempty context/target id lists and report
    the fraction of target positions whose argmax prediction (given context
    plus preceding target tokens) matches the true token, and the mean
    per-token negative log-likelihood in nats.
    """

    def score(self, context: Sequence[int], target: Sequence[int]) -> ScoreResult: ...


@dataclass(frozen=True)
class WindowSplit:
    index: int
    x_l: list[int]
    x_s: list[int]
    y: list[int]


def make_windows(tokens: TokenSequence, w: int = DEFAULT_WINDOW_SIZE) -> list[WindowSplit]:
    """Cut a token stream into window splits; empty when ``n < w``."""
    if w <= 0 or w % 4 != 0:
        raise ValueError(f"window size must be positive and divisible by 4, got {w}")
    ids = tokens.tokens
    quarter = w // 4
    windows = []
    for i in range(1, len(ids) // w + 1):
        end = i * w
        windows.append(
            WindowSplit(
                index=i,
                x_l=ids[end - w : end - quarter],
                x_s=ids[end - 2 * quarter : end - quarter],
                y=ids[end - quarter : end],
            )
        )
    return windows


def coherence_metrics(
    tokens: TokenSequence,
    scorer: LMScorer,
    w: int = DEFAULT_WINDOW_SIZE,
    diff_sign: str = "as_printed",
) -> tuple[float | None, float | None, float | None]:
    """Compute (acc_l, acc_s, diff); all ``None`` when no full window fits."""
    if diff_sign not in DIFF_SIGNS:
        raise ValueError(f"diff_sign must be one of {DIFF_SIGNS}, got {diff_sign!r}")
    windows = make_windows(tokens, w)
    if not windows:
        return None, None, None

    acc_l_sum = 0.0
    acc_s_sum = 0.0
    diff_sum = 0.0
    diff_ok = True
    for win in windows:
        try:
            long_result = scorer.score(win.x_l, win.y)
            short_result = scorer.score(win.x_s, win.y)
        except Exception as exc:
            raise ScorerError(f"scorer failed on window {win.index}: {exc}") from exc
        acc_l_sum += long_result.mean_top1_acc
        acc_s_sum += short_result.mean_top1_acc
        if long_result.mean_nll == 0.0:
            diff_ok = False
        elif diff_ok:
            numerator = long_result.mean_nll - short_result.mean_nll
            if diff_sign == "improvement":
                numerator = -numerator
            diff_sum += numerator / long_result.mean_nll

    count = len(windows)
    diff = diff_sum / count if diff_ok else None
    return acc_l_sum / count, acc_s_sum / count, diff


class BigramStubScorer:
    """Deterministic offline scorer for hermetic runs.

    Builds a bigram count table from the context only. The candidate
    vocabulary is every id seen in context or target. Predictions use
    add-one smoothing: ``p(t | prev) = (count(prev, t) + 1) /
    (count(prev, *) + |V|)``; the argmax breaks ties toward the smallest id.
    When ``prev`` has no outgoing bigram the distribution is uniform over
    the vocabulary.
    """

    name = "stub-bigram"

    def score(self, context: Sequence[int], target: Sequence[int]) -> ScoreResult:
        if not context or not target:
            raise ValueError("context and target must be nonempty")
        counts: dict[int, dict[int, int]] = {}
        for prev, nxt in zip(context, context[1:]):
            row = counts.setdefault(prev, {})
            row[nxt] = row.get(nxt, 0) + 1
        vocab = set(context)
        vocab.update(target)
        v = len(vocab)
        smallest = min(vocab)
        # Unseen continuations all share count 0, so the argmax over the
        # vocabulary is either the best row entry or, for an empty row, the
        # smallest id; scanning the whole vocabulary per step is never needed.
        totals = {prev: sum(row.values()) for prev, row in counts.items()}
        argmax = {
            prev: min(row.items(), key=lambda item: (-item[1], item[0]))[0]
            for prev, row in counts.items()
        }

        hits = 0
        nll_sum = 0.0
        prev = context[-1]
        for true_token in target:
            if argmax.get(prev, smallest) == true_token:
                hits += 1
            row = counts.get(prev)
            count = row.get(true_token, 0) if row else 0
            nll_sum += -math.log((count + 1) / (totals.get(prev, 0) + v))
            prev = true_token
        return ScoreResult(mean_top1_acc=hits / len(target), mean_nll=nll_sum / len(target))
