"""scikit-learn compatible front ends for scoring and categorization.

``QualityScorer`` is a stateless transformer mapping documents to the
eight-column metric matrix, so the metrics drop into sklearn pipelines,
column transformers, and clustering directly. ``ThresholdCategorizer``
applies a threshold config as a ``predict`` step. Neither learns from
data; ``fit`` validates parameters and loads resources, following the
usual convention for configuration-driven estimators.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classify import ThresholdConfig, classify, load_thresholds
from .coherence import BigramStubScorer
from .dmr import OverlapStubScorer
from .pipeline import MetricPipeline, PipelineConfig
from .records import METRIC_NAMES, ScoredDocument
from .remote import RemoteLMScorer, RemotePairScorer, verify_handshake
from .tokenization import TokenizerSpec
from .validation import as_documents, check_metric_matrix, metrics_to_row, row_to_metrics


def _resolve_lm_scorer(value, tokenizer_name: str, window_size: int):
    if value is None:
        return None
    if value == "stub":
        return BigramStubScorer()
    if isinstance(value, str):
        verify_handshake(value, tokenizer_name, min_context=window_size)
        return RemoteLMScorer(value)
    return value


def _resolve_pair_scorer(value, tokenizer_name: str):
    if value is None:
        return None
    if value == "stub":
        return OverlapStubScorer()
    if isinstance(value, str):
        verify_handshake(value, tokenizer_name)
        return RemotePairScorer(value)
    return value


class QualityScorer(BaseEstimator, TransformerMixin):
    """Transform documents into the (n_samples, 8) metric matrix.

    Parameters
    ----------
    lm_scorer, pair_scorer : None, "stub", URL string, or scorer object.
        ``None`` leaves the model-backed metrics as NaN; "stub" selects the
        deterministic offline scorers; a URL selects the remote service
        (its handshake must match the configured tokenizer).
    tokenizer : "builtin" or a tokenizer endpoint URL.
    language : language assumed for raw-string inputs ("EN" or "ZH").
    """

    def __init__(
        self,
        lm_scorer=None,
        pair_scorer=None,
        tokenizer="builtin",
        tokenizer_name=None,
        window_size=4096,
        diff_sign="as_printed",
        language="EN",
        jobs=1,
    ):
        self.lm_scorer = lm_scorer
        self.pair_scorer = pair_scorer
        self.tokenizer = tokenizer
        self.tokenizer_name = tokenizer_name
        self.window_size = window_size
        self.diff_sign = diff_sign
        self.language = language
        self.jobs = jobs

    def fit(self, X=None, y=None):
        if self.tokenizer == "builtin":
            spec = TokenizerSpec()
        else:
            spec = TokenizerSpec(kind="external", endpoint=self.tokenizer, name=self.tokenizer_name)
        config = PipelineConfig(
            tokenizer=spec,
            lm_scorer=_resolve_lm_scorer(self.lm_scorer, spec.display_name, self.window_size),
            pair_scorer=_resolve_pair_scorer(self.pair_scorer, spec.display_name),
            window_size=self.window_size,
            diff_sign=self.diff_sign,
            jobs=self.jobs,
        )
        self.pipeline_ = MetricPipeline(config)
        self.feature_names_out_ = list(METRIC_NAMES)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "pipeline_")
        docs = as_documents(X, language=self.language)
        rows = [
            metrics_to_row(scored.metrics)
            for scored in self.pipeline_.score_stream(docs)
        ]
        return np.asarray(rows, dtype=np.float64).reshape(len(docs), len(METRIC_NAMES))

    def score_documents(self, X) -> list[ScoredDocument]:
        """Like transform, but returns full scored records."""
        check_is_fitted(self, "pipeline_")
        return list(self.pipeline_.score_stream(as_documents(X, language=self.language)))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(METRIC_NAMES, dtype=object)


class ThresholdCategorizer(BaseEstimator):
    """Predict holistic / aggregated / chaotic from metric vectors.

    ``thresholds`` may be a config path, a JSON string, a parsed dict, or a
    ThresholdConfig. Inputs to ``predict`` may be ScoredDocument instances
    (which carry their own domain) or a plain metric matrix, in which case
    ``domain`` selects the threshold entry for every row.
    """

    def __init__(self, thresholds=None, domain="default"):
        self.thresholds = thresholds
        self.domain = domain

    def fit(self, X=None, y=None):
        if self.thresholds is None:
            raise ValueError("thresholds parameter is required")
        if isinstance(self.thresholds, ThresholdConfig):
            self.config_ = self.thresholds
        elif isinstance(self.thresholds, dict):
            import json

            self.config_ = load_thresholds(json.dumps(self.thresholds))
        elif isinstance(self.thresholds, str) and self.thresholds.lstrip().startswith("{"):
            self.config_ = load_thresholds(self.thresholds)
        else:
            with open(self.thresholds, encoding="utf-8") as f:
                self.config_ = load_thresholds(f)
        self.classes_ = np.asarray(["aggregated", "chaotic", "holistic"], dtype=object)
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "config_")
        if isinstance(X, (list, tuple)) and X and isinstance(X[0], ScoredDocument):
            labels = [
                classify(item.metrics, item.document.domain, self.config_) for item in X
            ]
        else:
            matrix = check_metric_matrix(X)
            labels = [
                classify(row_to_metrics(row), self.domain, self.config_) for row in matrix
            ]
        return np.asarray(labels, dtype=object)
