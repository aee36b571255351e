"""Statistics-only metrics: connective/pronoun density, TTR, paragraph length.

Matching semantics per lexicon kind:

* connectives (EN and ZH): case-insensitive, non-overlapping substring count
  per phrase, each phrase counted independently. Entries may end in a space
  or comma and are matched verbatim, which is how single-word cues such as
  ``but `` avoid matching inside longer words.
* pronouns, EN: whole-token match against lowercase token surfaces.
* pronouns, ZH: one left-to-right scan over the raw text, longest entry
  first at each position, so a two-character pronoun is never also counted
  as its one-character prefix.

Densities divide by the active tokenizer's token count ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import ConfigError
from .records import canonical_language
from .segmentation import ParagraphCount
from .tokenization import TokenSequence

_BUNDLED = {
    ("EN", "connectives"): "connectives_en.txt",
    ("ZH", "connectives"): "connectives_zh.txt",
    ("EN", "pronouns"): "pronouns_en.txt",
    ("ZH", "pronouns"): "pronouns_zh.txt",
}


@dataclass
class Lexicon:
    language: str
    kind: str
    entries: tuple[str, ...]

    def __post_init__(self) -> None:
        self.language = canonical_language(self.language)
        if self.kind not in ("connectives", "pronouns"):
            raise ConfigError(f"unknown lexicon kind {self.kind!r}")
        if not self.entries:
            raise ConfigError(f"{self.kind} lexicon for {self.language} is empty")
        folded = [e.lower() for e in self.entries]
        if len(set(folded)) != len(folded):
            dupes = sorted({e for e in folded if folded.count(e) > 1})
            raise ConfigError(f"duplicate entries after lowercase folding: {dupes}")
        if any(not e for e in self.entries):
            raise ConfigError("empty lexicon entry")


def parse_lexicon(text: str, language: str, kind: str) -> Lexicon:
    """Parse one-entry-per-line lexicon text.

    Leading/trailing whitespace inside an entry is significant; lines that
    are empty or whitespace-only are skipped, ``#`` lines are comments.
    """
    entries = []
    for raw in text.splitlines():
        if raw.startswith("#") or not raw.strip():
            continue
        entries.append(raw)
    return Lexicon(language=language, kind=kind, entries=tuple(entries))


def load_lexicon(language: str, kind: str, path: str | None = None) -> Lexicon:
    if path is None:
        language = canonical_language(language)
        name = _BUNDLED.get((language, kind))
        if name is None:
            raise ConfigError(f"no bundled {kind} lexicon for {language}")
        text = resources.files("longtext.data").joinpath(name).read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return parse_lexicon(text, language, kind)


def count_connectives(text: str, lexicon: Lexicon) -> int:
    folded = text.lower()
    return sum(folded.count(entry.lower()) for entry in lexicon.entries)


def count_pronouns(text: str, tokens: TokenSequence, lexicon: Lexicon) -> int:
    if lexicon.language == "EN":
        surfaces = tokens.surface if tokens.surface is not None else []
        wanted = {e.lower() for e in lexicon.entries}
        return sum(1 for s in surfaces if s.lower() in wanted)
    # ZH: longest-match-first scan over the raw text.
    folded = text.lower()
    by_length = sorted((e.lower() for e in lexicon.entries), key=len, reverse=True)
    count = 0
    i = 0
    while i < len(folded):
        for entry in by_length:
            if folded.startswith(entry, i):
                count += 1
                i += len(entry)
                break
        else:
            i += 1
    return count


def cohesion_conn(text: str, tokens: TokenSequence, lexicon: Lexicon) -> float | None:
    """Connective count over token count; ``None`` when there are no tokens."""
    if lexicon.kind != "connectives":
        raise ConfigError(f"expected a connectives lexicon, got {lexicon.kind}")
    if tokens.n == 0:
        return None
    return count_connectives(text, lexicon) / tokens.n


def cohesion_pron(tokens: TokenSequence, text: str, lexicon: Lexicon) -> float | None:
    """Pronoun count over token count; ``None`` when there are no tokens."""
    if lexicon.kind != "pronouns":
        raise ConfigError(f"expected a pronouns lexicon, got {lexicon.kind}")
    if tokens.n == 0:
        return None
    return count_pronouns(text, tokens, lexicon) / tokens.n


def complexity_ttr(tokens: TokenSequence) -> float | None:
    """Unique tokens over total tokens, on lowercase-folded surfaces."""
    if tokens.n == 0:
        return None
    if tokens.surface is not None:
        unique = len({s.lower() for s in tokens.surface})
    else:
        unique = len(set(tokens.tokens))
    return unique / tokens.n


def complexity_para(tokens: TokenSequence, paras: ParagraphCount) -> float | None:
    """Mean paragraph length in tokens."""
    if tokens.n == 0:
        return None
    if paras.n_para < 1:
        raise ValueError("paragraph count must be at least 1")
    return tokens.n / paras.n_para
