"""Tokenization behind a pluggable contract.

The built-in tokenizer is dependency-free and fully deterministic so every
metric can be computed without model servers: letter/digit runs form one
token, each Han character is its own token, any other non-whitespace
character is its own token, and whitespace is discarded. Letter-run
surfaces are lowercase-folded; token ids are interned per document in
first-appearance order.

A remote tokenizer can be plugged in through :class:`TokenizerSpec` with
``kind="external"``; it must answer ``{"text": ...}`` with
``{"surfaces": [...]}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

BUILTIN_TOKENIZER_NAME = "builtin_unicode"

# Han ideograph blocks (unified, extension A, compatibility, extensions B+).
_CJK_RANGES = (
    (0x3400, 0x4DBF),
    (0x4E00, 0x9FFF),
    (0xF900, 0xFAFF),
    (0x20000, 0x2EBEF),
)


def _is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


@dataclass
class TokenSequence:
    """Token ids with optional parallel surface strings."""

    tokens: list[int]
    surface: list[str] | None = None

    def __post_init__(self) -> None:
        if self.surface is not None and len(self.surface) != len(self.tokens):
            raise ValueError("surface list must parallel tokens")

    @property
    def n(self) -> int:
        return len(self.tokens)


@dataclass
class TokenizerSpec:
    """Selects the built-in tokenizer or an external endpoint."""

    kind: str = "builtin_unicode"
    endpoint: str | None = None
    name: str | None = None  # handshake identity for external tokenizers

    def __post_init__(self) -> None:
        if self.kind not in ("builtin_unicode", "external"):
            raise ConfigError(f"unknown tokenizer kind {self.kind!r}", path="tokenizer.kind")
        if self.kind == "external" and not self.endpoint:
            raise ConfigError("external tokenizer requires an endpoint", path="tokenizer.endpoint")
        if self.kind == "builtin_unicode" and self.endpoint:
            raise ConfigError("builtin tokenizer takes no endpoint", path="tokenizer.endpoint")

    @property
    def display_name(self) -> str:
        if self.kind == "builtin_unicode":
            return BUILTIN_TOKENIZER_NAME
        return self.name or f"external:{self.endpoint}"


def intern_surfaces(surfaces: list[str]) -> TokenSequence:
    """Assign integer ids to surfaces in first-appearance order."""
    ids: dict[str, int] = {}
    tokens = [ids.setdefault(s, len(ids)) for s in surfaces]
    return TokenSequence(tokens=tokens, surface=list(surfaces))


def split_surfaces(text: str) -> list[str]:
    """Apply the built-in segmentation rule to produce surface strings."""
    surfaces: list[str] = []
    run: list[str] = []

    def flush_run() -> None:
        if run:
            surfaces.append("".join(run).lower())
            run.clear()

    for ch in text:
        if ch.isspace():
            flush_run()
        elif _is_cjk(ch):
            flush_run()
            surfaces.append(ch)
        elif ch.isalnum():
            run.append(ch)
        else:
            flush_run()
            surfaces.append(ch)
    flush_run()
    return surfaces


class BuiltinTokenizer:
    name = BUILTIN_TOKENIZER_NAME

    def tokenize(self, text: str) -> TokenSequence:
        return intern_surfaces(split_surfaces(text))


class ExternalTokenizer:
    """Client-backed tokenizer; never falls back silently on failure."""

    def __init__(self, spec: TokenizerSpec, client=None):
        if spec.kind != "external":
            raise ConfigError("ExternalTokenizer requires kind='external'")
        from .remote import RemoteTokenizerClient

        self.spec = spec
        self.name = spec.display_name
        self._client = client or RemoteTokenizerClient(spec.endpoint)

    def tokenize(self, text: str) -> TokenSequence:
        return intern_surfaces(self._client.surfaces(text))


def make_tokenizer(spec: TokenizerSpec | None = None):
    spec = spec or TokenizerSpec()
    if spec.kind == "builtin_unicode":
        return BuiltinTokenizer()
    return ExternalTokenizer(spec)


def tokenize(text: str, spec: TokenizerSpec | None = None) -> TokenSequence:
    """Tokenize ``text``; deterministic for a fixed spec."""
    return make_tokenizer(spec).tokenize(text)
