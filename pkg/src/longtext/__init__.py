"""Quality metrics, categorization, and mixture manifests for long-text corpora."""

from .classify import IntervalPredicate, ThresholdConfig, classify, load_thresholds, sample_around
from .coherence import BigramStubScorer, ScoreResult, coherence_metrics, make_windows
from .corpus import passes_length_gate, read_documents, read_scored, write_scored
from .dmr import OverlapStubScorer, PairProbability, cohesion_dmr
from .estimators import QualityScorer, ThresholdCategorizer
from .lexical import Lexicon, cohesion_conn, cohesion_pron, complexity_para, complexity_ttr, load_lexicon
from .mixture import Manifest, MixtureRecipe, build_manifest, load_recipe, summarize_manifest
from .pipeline import MetricPipeline, PipelineConfig
from .records import CATEGORIES, METRIC_NAMES, Document, MetricVector, ScoredDocument
from .segmentation import split_paragraphs, split_sentences
from .stats import HistogramData, StatsReport, aggregate, histogram
from .tokenization import TokenizerSpec, TokenSequence, tokenize

__version__ = "0.1.0"

__all__ = [
    "BigramStubScorer",
    "CATEGORIES",
    "Document",
    "HistogramData",
    "IntervalPredicate",
    "Lexicon",
    "METRIC_NAMES",
    "Manifest",
    "MetricPipeline",
    "MetricVector",
    "MixtureRecipe",
    "OverlapStubScorer",
    "PairProbability",
    "PipelineConfig",
    "QualityScorer",
    "ScoreResult",
    "ScoredDocument",
    "StatsReport",
    "ThresholdCategorizer",
    "ThresholdConfig",
    "TokenSequence",
    "TokenizerSpec",
    "aggregate",
    "build_manifest",
    "classify",
    "coherence_metrics",
    "cohesion_conn",
    "cohesion_dmr",
    "cohesion_pron",
    "complexity_para",
    "complexity_ttr",
    "histogram",
    "load_lexicon",
    "load_recipe",
    "load_thresholds",
    "make_windows",
    "passes_length_gate",
    "read_documents",
    "read_scored",
    "sample_around",
    "split_paragraphs",
    "split_sentences",
    "summarize_manifest",
    "tokenize",
    "write_scored",
]
