"""Adjacent-sentence cohesion from pairwise relatedness probabilities.

A pair scorer maps two adjacent sentences to the probability that they are
unrelated (``p_no_conn``). For a document of N+1 sentences the metric is

    cohesion_dmr = 1 - mean(p_no_conn over the N adjacent pairs)

so fully related pairs score 1.0 and fully unrelated ones 0.0. All N pairs
are scored; very long documents pay O(sentences) scorer calls.

The production scorer is a trained discourse-relation model behind the
remote pair endpoint; :class:`OverlapStubScorer` is the offline default so
the metric stays meaningful without model weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Protocol

from .errors import ScorerError
from .segmentation import SentenceList
from .tokenization import split_surfaces


@dataclass(frozen=True)
class PairProbability:
    p_no_conn: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_no_conn <= 1.0:
            raise ScorerError(f"p_no_conn out of [0,1]: {self.p_no_conn}")


class PairScorer(Protocol):
    def score_pair(self, a: str, b: str) -> PairProbability: ...


BATCH_SIZE = 64


def _scored_pairs(pairs: list[tuple[str, str]], scorer: PairScorer) -> Iterator[PairProbability]:
    """Score adjacent pairs, using the scorer's batch call when it has one."""
    batched = getattr(scorer, "score_pairs", None)
    if batched is None:
        for i, (a, b) in enumerate(pairs):
            try:
                yield scorer.score_pair(a, b)
            except ScorerError:
                raise
            except Exception as exc:
                raise ScorerError(f"pair scorer failed on pair {i + 1}: {exc}") from exc
        return
    for start in range(0, len(pairs), BATCH_SIZE):
        chunk = pairs[start : start + BATCH_SIZE]
        try:
            results = batched(chunk)
        except ScorerError:
            raise
        except Exception as exc:
            raise ScorerError(
                f"pair scorer failed on pairs {start + 1}..{start + len(chunk)}: {exc}"
            ) from exc
        if len(results) != len(chunk):
            raise ScorerError("batch pair scorer returned a mismatched result count")
        yield from results


def cohesion_dmr(sentences: SentenceList, scorer: PairScorer) -> float | None:
    """Mean-relatedness cohesion; ``None`` for documents under two sentences.

    Pairs are scored in ascending order (batched when the scorer supports
    it) so the sum is reproducible. Out-of-range scorer output is a
    contract violation and raises rather than being clamped.
    """
    n_pairs = sentences.count - 1
    if n_pairs < 1:
        return None
    pairs = [
        (sentences.sentences[i], sentences.sentences[i + 1]) for i in range(n_pairs)
    ]
    total = 0.0
    for pair in _scored_pairs(pairs, scorer):
        if not isinstance(pair, PairProbability):
            pair = PairProbability(p_no_conn=float(pair))
        total += pair.p_no_conn
    return 1.0 - total / n_pairs


class OverlapStubScorer:
    """Offline pair scorer: ``p_no_conn = 1 - jaccard(token sets)``.

    Token sets use the built-in tokenizer's lowercase surfaces, so identical
    sentences give 0.0 and sentences with disjoint vocabulary give 1.0.
    """

    name = "stub-overlap"

    def score_pair(self, a: str, b: str) -> PairProbability:
        if not a or not b:
            raise ValueError("sentences must be nonempty")
        set_a = set(split_surfaces(a))
        set_b = set(split_surfaces(b))
        if not set_a and not set_b:
            return PairProbability(p_no_conn=0.0)
        union = len(set_a | set_b)
        jaccard = len(set_a & set_b) / union
        return PairProbability(p_no_conn=1.0 - jaccard)
