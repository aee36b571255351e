from __future__ import annotations

import io
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import synthetic_document
from longtext.corpus import (
    dump_record,
    passes_length_gate,
    read_documents,
    read_scored,
    scored_to_record,
    write_scored,
)
from longtext.errors import RecordError
from longtext.records import Document, MetricVector, ScoredDocument


def line(**kwargs):
    return json.dumps(kwargs, ensure_ascii=False)


class TestReadDocuments:
    def test_ascii_byte_len(self):
        docs = list(read_documents([line(id="a", text="abc", domain="Book", language="EN")]))
        assert docs[0].byte_len == 3

    def test_multibyte_byte_len(self):
        docs = list(read_documents([line(id="a", text="你好", domain="Law", language="ZH")]))
        assert docs[0].byte_len == 6

    def test_missing_text_field(self):
        with pytest.raises(RecordError, match="line 1"):
            list(read_documents([line(id="a", domain="Book", language="EN")]))

    def test_invalid_json_reports_line_number(self):
        good = line(id="a", text="x", domain="d", language="EN")
        with pytest.raises(RecordError, match="line 2"):
            list(read_documents([good, "{broken"]))

    def test_skip_errors_keeps_good_records(self):
        good = line(id="a", text="x", domain="d", language="EN")
        docs = list(read_documents([good, "{broken", good], skip_errors=True))
        assert len(docs) == 2

    def test_unknown_language_rejected(self):
        with pytest.raises(RecordError, match="language"):
            list(read_documents([line(id="a", text="x", domain="d", language="FR")]))

    def test_language_case_canonicalized(self):
        docs = list(read_documents([line(id="a", text="x", domain="d", language="en")]))
        assert docs[0].language == "EN"

    def test_blank_lines_ignored(self):
        good = line(id="a", text="x", domain="d", language="EN")
        assert len(list(read_documents(["", good, "   ", ""]))) == 1

    def test_reader_is_lazy(self):
        def gen():
            yield line(id="a", text="x", domain="d", language="EN")
            raise AssertionError("must not be pulled")

        iterator = read_documents(gen())
        assert next(iterator).id == "a"


class TestLengthGate:
    def test_boundary_is_strict(self):
        doc = Document(id="x", text="a" * 32768, domain="d", language="EN")
        assert passes_length_gate(doc) is False
        doc = Document(id="x", text="a" * 32769, domain="d", language="EN")
        assert passes_length_gate(doc) is True

    def test_zero_threshold(self):
        empty = Document(id="x", text="", domain="d", language="EN")
        assert passes_length_gate(empty, 0) is False
        assert passes_length_gate(Document(id="x", text="a", domain="d", language="EN"), 0)

    def test_negative_threshold_rejected(self):
        doc = Document(id="x", text="a", domain="d", language="EN")
        with pytest.raises(ValueError):
            passes_length_gate(doc, -1)

    def test_monotone_in_byte_len(self):
        rng = random.Random(1)
        lengths = sorted(rng.randrange(0, 200) for _ in range(20))
        gate = [passes_length_gate(Document(id="x", text="a" * n, domain="d", language="EN"), 100)
                for n in lengths]
        assert gate == sorted(gate)  # False...False True...True


class TestRoundTrip:
    def make_scored(self, i, category=None):
        metrics = MetricVector(cohesion_conn=0.1 * i, complexity_ttr=0.5, coherence_diff=None)
        doc = Document(id=f"d{i}", text=f"text {i} 你好", domain="Book", language="ZH")
        return ScoredDocument(document=doc, metrics=metrics, category=category, token_count=4 + i)

    def test_empty_sequence(self):
        sink = io.StringIO()
        assert write_scored([], sink) == 0
        assert sink.getvalue() == ""

    def test_three_documents_three_lines(self):
        sink = io.StringIO()
        docs = [self.make_scored(i) for i in range(3)]
        assert write_scored(docs, sink) == 3
        assert sink.getvalue().count("\n") == 3

    def test_category_serialized(self):
        sink = io.StringIO()
        write_scored([self.make_scored(1, category="holistic")], sink)
        assert '"category":"holistic"' in sink.getvalue()

    def test_round_trip_field_for_field(self):
        docs = [self.make_scored(i, category="aggregated" if i % 2 else None) for i in range(5)]
        sink = io.StringIO()
        write_scored(docs, sink)
        back = list(read_scored(io.StringIO(sink.getvalue())))
        assert back == docs

    def test_not_computable_serialized_as_null(self):
        record = scored_to_record(self.make_scored(1))
        assert record["metrics.coherence_acc_l"] is None
        assert "null" in dump_record(record)

    def test_missing_metrics_read_as_not_computable(self):
        docs = list(read_scored([line(id="a", text="x", domain="d", language="EN")]))
        assert docs[0].metrics == MetricVector()
        assert docs[0].category is None

    def test_bad_category_rejected(self):
        with pytest.raises(RecordError, match="category"):
            list(read_scored([line(id="a", text="x", domain="d", language="EN", category="nope")]))

    def test_bad_metric_type_rejected(self):
        bad = json.loads(line(id="a", text="x", domain="d", language="EN"))
        bad["metrics.cohesion_conn"] = "high"
        with pytest.raises(RecordError, match="cohesion_conn"):
            list(read_scored([json.dumps(bad)]))


@given(st.data())
def test_round_trip_random_documents(data):
    rng = random.Random(data.draw(st.integers(0, 10_000)))
    docs = []
    for i in range(data.draw(st.integers(0, 8))):
        doc = synthetic_document(rng, i)
        metrics = MetricVector(
            **{
                name: (None if rng.random() < 0.3 else round(rng.uniform(0, 2), 6))
                for name in MetricVector().as_dict()
            }
        )
        category = rng.choice([None, "holistic", "aggregated", "chaotic"])
        docs.append(ScoredDocument(doc, metrics, category, token_count=rng.randrange(1, 999)))
    sink = io.StringIO()
    write_scored(docs, sink)
    assert list(read_scored(io.StringIO(sink.getvalue()))) == docs
