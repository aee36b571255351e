"""Rule-based sentence and paragraph segmentation for English and Chinese.

The rules are deliberately explicit rather than model-based so results are
bit-reproducible everywhere:

* EN: a sentence ends after ``.``, ``!``, ``?`` or ``…`` when followed by
  whitespace or end of text, unless the period terminates a known
  abbreviation or sits between digits.
* ZH: a sentence ends after ``。``, ``！``, ``？``, ``；`` or ``…``
  unconditionally, and after ASCII ``.``/``!``/``?`` followed by whitespace.
* A newline always ends the current sentence in both languages.

Paragraphs are maximal newline-separated runs containing at least one
non-whitespace character, so every paragraph contributes at least one
sentence. Runs that are empty or whitespace-only do not count.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .records import canonical_language

_EN_TERMINATORS = frozenset(".!?…")
_ZH_UNCONDITIONAL = frozenset("。！？；…")
_ZH_ASCII = frozenset(".!?")

_DEFAULT_ABBREVIATIONS: frozenset[str] | None = None


def load_abbreviations(path: str | None = None) -> frozenset[str]:
    """Load the abbreviation list; ``#`` lines are comments."""
    if path is None:
        text = resources.files("longtext.data").joinpath("abbreviations_en.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    entries = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line.lower())
    return frozenset(entries)


def default_abbreviations() -> frozenset[str]:
    global _DEFAULT_ABBREVIATIONS
    if _DEFAULT_ABBREVIATIONS is None:
        _DEFAULT_ABBREVIATIONS = load_abbreviations()
    return _DEFAULT_ABBREVIATIONS


@dataclass
class SentenceList:
    sentences: list[str]

    @property
    def count(self) -> int:
        return len(self.sentences)


@dataclass
class ParagraphCount:
    n_para: int


def _abbrev_before(text: str, i: int, abbreviations: frozenset[str]) -> bool:
    # Collect letters and interior periods backwards from the '.' at i so
    # multi-part abbreviations ("e.g") match as a whole.
    j = i - 1
    while j >= 0 and (text[j].isalpha() or text[j] == "."):
        j -= 1
    token = text[j + 1 : i].lower()
    return bool(token) and token in abbreviations


def _between_digits(text: str, i: int) -> bool:
    return 0 < i < len(text) - 1 and text[i - 1].isdigit() and text[i + 1].isdigit()


def _is_boundary(text: str, i: int, language: str, abbreviations: frozenset[str]) -> bool:
    ch = text[i]
    at_break = i + 1 == len(text) or text[i + 1].isspace()
    if language == "EN":
        if ch not in _EN_TERMINATORS or not at_break:
            return False
        if ch == "." and (_abbrev_before(text, i, abbreviations) or _between_digits(text, i)):
            return False
        return True
    if ch in _ZH_UNCONDITIONAL:
        return True
    return ch in _ZH_ASCII and i + 1 < len(text) and text[i + 1].isspace()


def split_sentences(
    text: str,
    language: str,
    abbreviations: frozenset[str] | None = None,
) -> SentenceList:
    """Split ``text`` into sentences under the language's rule set.

    Raises ``ValueError`` when the text has no non-whitespace content.
    """
    language = canonical_language(language)
    if abbreviations is None:
        abbreviations = default_abbreviations()

    sentences: list[str] = []
    buf: list[str] = []

    def flush() -> None:
        chunk = "".join(buf).strip()
        buf.clear()
        if chunk:
            sentences.append(chunk)

    for i, ch in enumerate(text):
        if ch == "\n":
            flush()
            continue
        buf.append(ch)
        if _is_boundary(text, i, language, abbreviations):
            flush()
    flush()

    if not sentences:
        raise ValueError("no sentences: text has no non-whitespace content")
    return SentenceList(sentences=sentences)


def split_paragraphs(text: str) -> ParagraphCount:
    """Count paragraphs as newline-separated runs with visible content."""
    n = sum(1 for chunk in text.split("\n") if chunk.strip())
    if n == 0:
        raise ValueError("no paragraphs: text has no non-whitespace content")
    return ParagraphCount(n_para=n)
