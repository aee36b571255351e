from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from longtext.records import Document

EN_WORDS = [
    "the", "cat", "sat", "firstly", "however", "it", "they", "garden",
    "because", "so", "but", "evidence", "model", "window", "i", "me",
    "result", "first", "next", "item", "overall", "alpha", "beta",
]
ZH_CHARS = "我们你他她它这那很好走了是的在不天气句子文章因此而且但是所以"
PUNCT = [". ", "! ", "? ", ", ", "; ", "\n", "\n\n", "。", "！", "？", "，", " "]


def synthetic_text(rng: random.Random, language: str, words: int) -> str:
    parts = []
    for _ in range(words):
        if language == "EN":
            parts.append(rng.choice(EN_WORDS))
            parts.append(rng.choice(PUNCT[:7]))
        else:
            parts.append("".join(rng.choice(ZH_CHARS) for _ in range(rng.randint(1, 4))))
            parts.append(rng.choice(PUNCT[5:]))
    return "".join(parts).strip() or "空"


def synthetic_document(rng: random.Random, i: int, language: str | None = None) -> Document:
    language = language or rng.choice(["EN", "ZH"])
    domain = rng.choice(["CommonCrawl", "Book", "Law", "WebText"])
    return Document(
        id=f"doc-{i:05d}",
        text=synthetic_text(rng, language, rng.randint(3, 120)),
        domain=domain,
        language=language,
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
