from __future__ import annotations

import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from longtext.segmentation import (
    load_abbreviations,
    split_paragraphs,
    split_sentences,
)


def sentences(text, language="EN"):
    return split_sentences(text, language).sentences


class TestEnglishRule:
    def test_terminators_with_trailing_space(self):
        assert sentences("A. B? C!") == ["A.", "B?", "C!"]

    def test_terminator_at_end_of_text(self):
        assert sentences("Done.") == ["Done."]

    def test_no_terminator_is_one_sentence(self):
        assert sentences("one sentence") == ["one sentence"]

    def test_abbreviations_do_not_split(self):
        assert sentences("Mr. Smith arrived. Then left.") == ["Mr. Smith arrived.", "Then left."]
        assert sentences("See e.g. the appendix.") == ["See e.g. the appendix."]
        assert sentences("Fig. 3 shows it.") == ["Fig. 3 shows it."]

    def test_period_inside_number(self):
        assert sentences("pi is 3.14 roughly") == ["pi is 3.14 roughly"]

    def test_ellipsis_character(self):
        assert sentences("Wait… Go!") == ["Wait…", "Go!"]

    def test_terminator_followed_by_letter_does_not_split(self):
        assert sentences("version 1.b is out") == ["version 1.b is out"]

    def test_custom_abbreviation_list(self):
        custom = frozenset({"approx"})
        got = split_sentences("approx. ten. Mr. who?", "EN", custom).sentences
        assert got == ["approx. ten.", "Mr.", "who?"]


class TestChineseRule:
    def test_fullwidth_terminators(self):
        assert sentences("你好。再见！", "ZH") == ["你好。", "再见！"]

    def test_semicolon_and_question(self):
        assert sentences("甲；乙？丙", "ZH") == ["甲；", "乙？", "丙"]

    def test_fullwidth_split_needs_no_whitespace(self):
        assert sentences("一。二。三。", "ZH") == ["一。", "二。", "三。"]

    def test_ascii_terminator_needs_whitespace(self):
        assert sentences("a.b. c", "ZH") == ["a.b.", "c"]


def test_newline_always_ends_sentence():
    assert sentences("no terminator\nnext line") == ["no terminator", "next line"]
    assert sentences("你好\n再见", "ZH") == ["你好", "再见"]


def test_empty_text_rejected():
    with pytest.raises(ValueError):
        split_sentences("", "EN")
    with pytest.raises(ValueError):
        split_sentences("   \n ", "EN")


def test_paragraph_counting():
    assert split_paragraphs("a\nb\nc").n_para == 3
    assert split_paragraphs("a\n\n\nb").n_para == 2
    assert split_paragraphs("abc").n_para == 1
    assert split_paragraphs("a\n   \nb").n_para == 2


def test_paragraphs_empty_text_rejected():
    with pytest.raises(ValueError):
        split_paragraphs("")
    with pytest.raises(ValueError):
        split_paragraphs(" \n\n ")


def test_default_abbreviations_loaded_from_data():
    abbrevs = load_abbreviations()
    assert "mr" in abbrevs and "e.g" in abbrevs and "fig" in abbrevs


visible = st.text(
    alphabet=st.sampled_from(list("abc .!?…。！？；\n123你好 ")), min_size=1, max_size=120
).filter(lambda t: t.strip())


@given(text=visible, language=st.sampled_from(["EN", "ZH"]))
def test_non_whitespace_content_is_conserved(text, language):
    got = split_sentences(text, language).sentences
    assert re.sub(r"\s+", "", "".join(got)) == re.sub(r"\s+", "", text)


@given(text=visible, language=st.sampled_from(["EN", "ZH"]))
def test_every_paragraph_contributes_a_sentence(text, language):
    total = 0
    for chunk in text.split("\n"):
        if chunk.strip():
            total += len(split_sentences(chunk, language).sentences)
    assert len(split_sentences(text, language).sentences) == total
    assert total >= split_paragraphs(text).n_para >= 1


@given(text=visible, language=st.sampled_from(["EN", "ZH"]))
def test_segmentation_deterministic(text, language):
    assert split_sentences(text, language).sentences == split_sentences(text, language).sentences
