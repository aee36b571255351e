"""Per-document metric computation wired from one config object."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import lexical
from .coherence import DEFAULT_WINDOW_SIZE, DIFF_SIGNS, LMScorer, coherence_metrics
from .dmr import PairScorer, cohesion_dmr
from .errors import ConfigError
from .parallel import ordered_parallel_map
from .records import Document, MetricVector, ScoredDocument
from .segmentation import load_abbreviations, split_paragraphs, split_sentences
from .tokenization import TokenizerSpec, make_tokenizer


@dataclass
class PipelineConfig:
    """Everything cmd-line and estimator frontends need to score documents."""

    tokenizer: TokenizerSpec = field(default_factory=TokenizerSpec)
    lm_scorer: LMScorer | None = None
    pair_scorer: PairScorer | None = None
    window_size: int = DEFAULT_WINDOW_SIZE
    diff_sign: str = "as_printed"
    lexicon_paths: dict[tuple[str, str], str] = field(default_factory=dict)
    abbreviations_path: str | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.window_size <= 0 or self.window_size % 4 != 0:
            raise ConfigError(
                f"window_size must be positive and divisible by 4, got {self.window_size}",
                path="window_size",
            )
        if self.diff_sign not in DIFF_SIGNS:
            raise ConfigError(f"diff_sign must be one of {DIFF_SIGNS}", path="diff_sign")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1", path="jobs")


class MetricPipeline:
    """Computes the eight-metric vector for documents.

    Lexicons and the abbreviation list are loaded once and shared; scoring
    itself is pure per document, so one pipeline may be used from many
    workers.
    """

    def __init__(self, config: PipelineConfig | None = None):
        self.config = config or PipelineConfig()
        self.tokenizer = make_tokenizer(self.config.tokenizer)
        self.abbreviations = load_abbreviations(self.config.abbreviations_path)
        self.lexicons = {}
        for language in ("EN", "ZH"):
            for kind in ("connectives", "pronouns"):
                path = self.config.lexicon_paths.get((language, kind))
                self.lexicons[(language, kind)] = lexical.load_lexicon(language, kind, path)

    @property
    def tokenizer_name(self) -> str:
        return self.config.tokenizer.display_name

    def score(self, doc: Document) -> ScoredDocument:
        tokens = self.tokenizer.tokenize(doc.text)
        metrics = MetricVector()
        scored = ScoredDocument(document=doc, metrics=metrics, token_count=tokens.n)
        if tokens.n == 0:
            return scored

        conn_lexicon = self.lexicons[(doc.language, "connectives")]
        pron_lexicon = self.lexicons[(doc.language, "pronouns")]
        metrics.cohesion_conn = lexical.cohesion_conn(doc.text, tokens, conn_lexicon)
        metrics.cohesion_pron = lexical.cohesion_pron(tokens, doc.text, pron_lexicon)
        metrics.complexity_ttr = lexical.complexity_ttr(tokens)
        metrics.complexity_para = lexical.complexity_para(tokens, split_paragraphs(doc.text))

        if self.config.lm_scorer is not None:
            acc_l, acc_s, diff = coherence_metrics(
                tokens,
                self.config.lm_scorer,
                w=self.config.window_size,
                diff_sign=self.config.diff_sign,
            )
            metrics.coherence_acc_l = acc_l
            metrics.coherence_acc_s = acc_s
            metrics.coherence_diff = diff

        if self.config.pair_scorer is not None:
            sentences = split_sentences(doc.text, doc.language, self.abbreviations)
            metrics.cohesion_dmr = cohesion_dmr(sentences, self.config.pair_scorer)
        return scored

    def score_stream(self, docs: Iterable[Document]) -> Iterator[ScoredDocument]:
        """Score documents concurrently, preserving input order."""
        yield from ordered_parallel_map(self.score, docs, self.config.jobs)
