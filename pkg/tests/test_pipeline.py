from __future__ import annotations

import pytest

from longtext.coherence import BigramStubScorer
from longtext.dmr import OverlapStubScorer
from longtext.errors import ConfigError
from longtext.pipeline import MetricPipeline, PipelineConfig
from longtext.records import Document


def pipeline(**kwargs):
    defaults = dict(lm_scorer=BigramStubScorer(), pair_scorer=OverlapStubScorer(), window_size=8)
    defaults.update(kwargs)
    return MetricPipeline(PipelineConfig(**defaults))


def doc(text, language="EN"):
    return Document(id="d", text=text, domain="Book", language=language)


def test_empty_text_all_not_computable():
    scored = pipeline().score(doc(""))
    assert all(v is None for v in scored.metrics.as_dict().values())
    assert scored.token_count == 0


def test_whitespace_only_text_all_not_computable():
    scored = pipeline().score(doc("   \n\t "))
    assert all(v is None for v in scored.metrics.as_dict().values())


def test_single_sentence_dmr_not_computable():
    scored = pipeline().score(doc("one sentence no terminator"))
    assert scored.metrics.cohesion_dmr is None
    assert scored.metrics.complexity_ttr is not None


def test_short_doc_coherence_not_computable():
    scored = pipeline(window_size=4096).score(doc("a few tokens. only a few."))
    assert scored.metrics.coherence_acc_l is None
    assert scored.metrics.coherence_acc_s is None
    assert scored.metrics.coherence_diff is None


def test_long_doc_all_computable():
    text = ("the cat sat. " * 40) + "\nthe dog ran. it was fast."
    scored = pipeline().score(doc(text))
    assert all(v is not None for v in scored.metrics.as_dict().values())
    # each word and each period is one token: 40 * 4 on line one, 8 on line two
    assert scored.token_count == 40 * 4 + 8


def test_no_scorers_leaves_model_metrics_none():
    scored = MetricPipeline(PipelineConfig()).score(doc("plenty of text here. more text."))
    assert scored.metrics.coherence_acc_l is None
    assert scored.metrics.cohesion_dmr is None
    assert scored.metrics.cohesion_conn is not None


def test_zh_document_uses_zh_lexicons():
    text = "我们走了。因此，他们也走了。"
    scored = pipeline().score(doc(text, language="ZH"))
    assert scored.metrics.cohesion_pron > 0
    assert scored.metrics.cohesion_conn > 0


def test_window_size_validation():
    with pytest.raises(ConfigError):
        PipelineConfig(window_size=10)
    with pytest.raises(ConfigError):
        PipelineConfig(window_size=0)


def test_diff_sign_validation():
    with pytest.raises(ConfigError):
        PipelineConfig(diff_sign="upside_down")


def test_jobs_validation():
    with pytest.raises(ConfigError):
        PipelineConfig(jobs=0)


def test_score_stream_preserves_order():
    docs = [Document(id=f"d{i}", text=f"text number {i}. more.", domain="B", language="EN") for i in range(30)]
    out = list(pipeline(jobs=4).score_stream(docs))
    assert [s.document.id for s in out] == [f"d{i}" for i in range(30)]


def test_token_count_attached():
    scored = pipeline().score(doc("one two three."))
    assert scored.token_count == 4
