from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from longtext.errors import ConfigError
from longtext.tokenization import (
    TokenizerSpec,
    TokenSequence,
    intern_surfaces,
    split_surfaces,
    tokenize,
)


def test_letter_runs_and_punctuation():
    seq = tokenize("Hello, world")
    assert seq.surface == ["hello", ",", "world"]
    assert seq.n == 3


def test_cjk_characters_are_single_tokens():
    assert tokenize("你好").n == 2
    # mixed script: run breaks around each Han character
    assert split_surfaces("abc你def") == ["abc", "你", "def"]


def test_empty_and_whitespace_only():
    assert tokenize("").n == 0
    assert tokenize(" \t\n ").n == 0


def test_digits_join_letter_runs():
    assert split_surfaces("win32 api") == ["win32", "api"]


def test_ids_interned_by_first_appearance():
    seq = tokenize("a b a c b")
    assert seq.tokens == [0, 1, 0, 2, 1]


def test_surfaces_fold_case_ids_merge():
    seq = tokenize("The the THE")
    assert seq.tokens == [0, 0, 0]
    assert seq.surface == ["the", "the", "the"]


def test_determinism():
    text = "Repeatable, 输入 -> output 123."
    a = tokenize(text)
    b = tokenize(text)
    assert a.tokens == b.tokens and a.surface == b.surface


def test_surface_length_mismatch_rejected():
    with pytest.raises(ValueError):
        TokenSequence(tokens=[1, 2], surface=["only-one"])


def test_external_spec_requires_endpoint():
    with pytest.raises(ConfigError):
        TokenizerSpec(kind="external")
    with pytest.raises(ConfigError):
        TokenizerSpec(kind="mystery")


def test_intern_surfaces_round_trip():
    seq = intern_surfaces(["x", "y", "x"])
    assert seq.tokens == [0, 1, 0]
    assert seq.n == 3


text_strategy = st.text(
    alphabet=st.characters(codec="utf-8", exclude_categories=("Cs",)), max_size=200
)


@given(a=text_strategy, b=text_strategy)
def test_concatenation_bound(a, b):
    assert tokenize(a + b).n <= tokenize(a).n + tokenize(b).n + 1


@given(text=text_strategy)
def test_empty_iff_no_visible_content(text):
    assert (tokenize(text).n == 0) == (text.strip() == "")
