"""HTTP clients for external tokenizers and model scorers.

Wire contract (JSON over POST unless noted):

* ``POST {base}/score``  {"context": [int], "target": [int]} ->
  {"acc": number, "nll": number}
* ``POST {base}/pair``   {"a": str, "b": str} -> {"p_no_conn": number}, or
  batched {"pairs": [[a, b], ...]} -> {"p_no_conn": [number, ...]}
* ``GET  {base}/handshake`` -> {"tokenizer_name": str, "max_context": int,
  "versions": {...}}
* ``POST {base}/tokenize`` {"text": str} -> {"surfaces": [str]}

Failures never fall back silently: transport errors and non-2xx statuses
raise :class:`ScorerError` with the server's message when available.
"""

from __future__ import annotations

from typing import Sequence

import requests

from .coherence import ScoreResult
from .dmr import PairProbability
from .errors import ScorerError

DEFAULT_TIMEOUT = 60.0


class _HttpClient:
    def __init__(self, base_url: str, timeout: float = DEFAULT_TIMEOUT, session=None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._session = session or requests.Session()

    def _raise_for(self, response, what: str) -> dict:
        if response.status_code // 100 != 2:
            detail = response.text.strip()
            raise ScorerError(f"{what} failed with status {response.status_code}: {detail[:500]}")
        try:
            return response.json()
        except ValueError as exc:
            raise ScorerError(f"{what} returned non-JSON body") from exc

    def post(self, path: str, payload: dict, what: str) -> dict:
        try:
            response = self._session.post(
                f"{self.base_url}{path}", json=payload, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise ScorerError(f"{what}: transport error contacting {self.base_url}{path}: {exc}") from exc
        return self._raise_for(response, what)

    def get(self, path: str, what: str) -> dict:
        try:
            response = self._session.get(f"{self.base_url}{path}", timeout=self.timeout)
        except requests.RequestException as exc:
            raise ScorerError(f"{what}: transport error contacting {self.base_url}{path}: {exc}") from exc
        return self._raise_for(response, what)


def fetch_handshake(base_url: str, timeout: float = DEFAULT_TIMEOUT, session=None) -> dict:
    return _HttpClient(base_url, timeout, session).get("/handshake", "handshake")


def verify_handshake(
    base_url: str,
    expected_tokenizer: str,
    min_context: int | None = None,
    timeout: float = DEFAULT_TIMEOUT,
    session=None,
) -> dict:
    """Fetch the service handshake and reject incompatible services.

    A tokenizer-name mismatch is always fatal; ``min_context`` additionally
    rejects services whose declared ``max_context`` cannot hold one scoring
    request (context plus target).
    """
    info = fetch_handshake(base_url, timeout, session)
    name = info.get("tokenizer_name")
    if name != expected_tokenizer:
        raise ScorerError(
            f"tokenizer mismatch: service {base_url} declares {name!r}, "
            f"pipeline is configured for {expected_tokenizer!r}"
        )
    if min_context is not None:
        max_context = info.get("max_context")
        if isinstance(max_context, (int, float)) and max_context < min_context:
            raise ScorerError(
                f"service {base_url} max_context {max_context} is smaller than "
                f"the configured window size {min_context}"
            )
    return info


class RemoteTokenizerClient(_HttpClient):
    def surfaces(self, text: str) -> list[str]:
        body = self.post("/tokenize", {"text": text}, "tokenize")
        surfaces = body.get("surfaces")
        if not isinstance(surfaces, list) or not all(isinstance(s, str) for s in surfaces):
            raise ScorerError("tokenize response must carry a list of surface strings")
        return surfaces


class RemoteLMScorer(_HttpClient):
    """LM scorer speaking the /score wire contract."""

    def score(self, context: Sequence[int], target: Sequence[int]) -> ScoreResult:
        if not context or not target:
            raise ValueError("context and target must be nonempty")
        body = self.post("/score", {"context": list(context), "target": list(target)}, "score")
        if "acc" not in body or "nll" not in body:
            raise ScorerError("score response must carry 'acc' and 'nll'")
        return ScoreResult(mean_top1_acc=float(body["acc"]), mean_nll=float(body["nll"]))


class RemotePairScorer(_HttpClient):
    """Pair scorer speaking the /pair wire contract."""

    def score_pair(self, a: str, b: str) -> PairProbability:
        if not a or not b:
            raise ValueError("sentences must be nonempty")
        body = self.post("/pair", {"a": a, "b": b}, "pair")
        if "p_no_conn" not in body:
            raise ScorerError("pair response must carry 'p_no_conn'")
        return PairProbability(p_no_conn=float(body["p_no_conn"]))

    def score_pairs(self, pairs: Sequence[tuple[str, str]]) -> list[PairProbability]:
        if not pairs:
            return []
        body = self.post("/pair", {"pairs": [[a, b] for a, b in pairs]}, "pair")
        errors = body.get("errors")
        if errors:
            first = errors[0] if isinstance(errors, list) else errors
            raise ScorerError(
                f"pair scorer rejected item {first.get('index')}: {first.get('message')}"
            )
        values = body.get("p_no_conn")
        if not isinstance(values, list) or len(values) != len(pairs):
            raise ScorerError("batched pair response must carry one probability per pair")
        return [PairProbability(p_no_conn=float(v)) for v in values]
