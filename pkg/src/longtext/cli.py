"""Command-line interface.

Subcommands: score, classify, stats, hist, sample, mix. Machine output
always goes to --output (or stdout); human diagnostics go to stderr, never
mixed. All randomness flows from an explicit seed; sampling commands
refuse to run without one.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager

from .classify import classify_documents, load_thresholds, sample_around
from .coherence import BigramStubScorer
from .corpus import dump_record, passes_length_gate, read_documents, read_scored, scored_to_record, write_scored
from .dmr import OverlapStubScorer
from .errors import ConfigError
from .mixture import build_manifest, load_recipe, summarize_manifest
from .pipeline import MetricPipeline, PipelineConfig
from .records import METRIC_NAMES
from .remote import RemoteLMScorer, RemotePairScorer, verify_handshake
from .stats import aggregate, histogram
from .tokenization import BuiltinTokenizer, TokenizerSpec


@contextmanager
def _open_input(path: str | None):
    if path in (None, "-"):
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as f:
            yield f


@contextmanager
def _open_output(path: str | None):
    """Write file outputs atomically so failed runs leave no partial file."""
    if path in (None, "-"):
        yield sys.stdout
        return
    tmp = path + ".tmp"
    f = open(tmp, "w", encoding="utf-8")
    try:
        yield f
    except BaseException:
        f.close()
        os.unlink(tmp)
        raise
    f.close()
    os.replace(tmp, path)


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc.msg}", path=f"{path}:{exc.lineno}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object", path=path)
    return raw


def _setting(args, config: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name, default)


def _build_pipeline(args, config: dict) -> MetricPipeline:
    tok_conf = config.get("tokenizer", {})
    spec = TokenizerSpec(
        kind=tok_conf.get("kind", "builtin_unicode"),
        endpoint=tok_conf.get("endpoint"),
        name=tok_conf.get("name"),
    )
    tokenizer_name = spec.display_name

    window_size = int(_setting(args, config, "window_size", 4096))
    lm_scorer = None
    if getattr(args, "stub_lm_scorer", False) or config.get("stub_lm_scorer"):
        lm_scorer = BigramStubScorer()
    lm_endpoint = _setting(args, config, "lm_endpoint")
    if lm_endpoint:
        if lm_scorer is not None:
            raise ConfigError("choose either --stub-lm-scorer or --lm-endpoint, not both")
        verify_handshake(lm_endpoint, tokenizer_name, min_context=window_size)
        lm_scorer = RemoteLMScorer(lm_endpoint)

    pair_scorer = None
    if getattr(args, "stub_pair_scorer", False) or config.get("stub_pair_scorer"):
        pair_scorer = OverlapStubScorer()
    pair_endpoint = _setting(args, config, "pair_endpoint")
    if pair_endpoint:
        if pair_scorer is not None:
            raise ConfigError("choose either --stub-pair-scorer or --pair-endpoint, not both")
        verify_handshake(pair_endpoint, tokenizer_name)
        pair_scorer = RemotePairScorer(pair_endpoint)

    lexicon_paths = {}
    for language, kinds in (config.get("lexicons") or {}).items():
        for kind, path in (kinds or {}).items():
            lexicon_paths[(language.upper(), kind)] = path

    return MetricPipeline(
        PipelineConfig(
            tokenizer=spec,
            lm_scorer=lm_scorer,
            pair_scorer=pair_scorer,
            window_size=window_size,
            diff_sign=_setting(args, config, "diff_sign", "as_printed"),
            lexicon_paths=lexicon_paths,
            abbreviations_path=config.get("abbreviations"),
            jobs=int(_setting(args, config, "jobs", 1)),
        )
    )


def _with_token_counts(scored_docs, note_stream):
    """Yield scored docs, re-tokenizing any that lack a token count."""
    tokenizer = BuiltinTokenizer()
    recomputed = 0
    for scored in scored_docs:
        if scored.token_count is None:
            scored.token_count = tokenizer.tokenize(scored.document.text).n
            recomputed += 1
        yield scored
    if recomputed:
        print(
            f"note: token_count missing on {recomputed} records; recomputed with the builtin tokenizer",
            file=note_stream,
        )


def cmd_score(args) -> int:
    config = _load_config_file(args.config)
    pipeline = _build_pipeline(args, config)
    min_bytes = _setting(args, config, "min_bytes")
    with _open_input(args.input) as src, _open_output(args.output) as sink:
        docs = read_documents(src, skip_errors=args.skip_errors)
        if min_bytes is not None:
            docs = (d for d in docs if passes_length_gate(d, int(min_bytes)))
        count = write_scored(pipeline.score_stream(docs), sink)
    print(f"scored {count} documents", file=sys.stderr)
    return 0


def cmd_classify(args) -> int:
    config = _load_config_file(args.config)
    thresholds_path = _setting(args, config, "thresholds")
    if not thresholds_path:
        raise ConfigError("a thresholds file is required (--thresholds)")
    with open(thresholds_path, encoding="utf-8") as f:
        thresholds = load_thresholds(f)
    with _open_input(args.input) as src, _open_output(args.output) as sink:
        docs = read_scored(src, skip_errors=args.skip_errors)
        labeled = classify_documents(docs, thresholds)
        if args.skip_errors:
            labeled = _skip_classification_errors(labeled)
        count = write_scored(labeled, sink)
    print(f"classified {count} documents", file=sys.stderr)
    return 0


def _skip_classification_errors(labeled):
    from .errors import ClassificationError

    iterator = iter(labeled)
    while True:
        try:
            yield next(iterator)
        except StopIteration:
            return
        except ClassificationError as exc:
            print(f"skipping document: {exc}", file=sys.stderr)


def cmd_stats(args) -> int:
    edges = [int(e) for e in args.bucket_edges.split(",")] if args.bucket_edges else None
    with _open_input(args.input) as src:
        docs = _with_token_counts(read_scored(src, skip_errors=args.skip_errors), sys.stderr)
        report = aggregate(docs, bucket_edges=edges) if edges else aggregate(docs)
    with _open_output(args.output) as sink:
        json.dump(report.as_dict(), sink, ensure_ascii=False, sort_keys=True, indent=2)
        sink.write("\n")
    print(report.render_text(), file=sys.stderr)
    return 0


def cmd_hist(args) -> int:
    if args.metric not in METRIC_NAMES:
        raise ConfigError(f"unknown metric {args.metric!r}; choose from {METRIC_NAMES}")
    edges = [float(e) for e in args.edges.split(",")]
    with _open_input(args.input) as src:
        docs = list(read_scored(src, skip_errors=args.skip_errors))
    values = [d.metrics.get(args.metric) for d in docs]
    categories = [d.category for d in docs] if any(d.category for d in docs) else None
    data = histogram(values, edges, metric=args.metric, categories=categories)
    with _open_output(args.output) as sink:
        sink.write(data.render_csv())
    return 0


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError("--range expects LO,HI")
    return float(parts[0]), float(parts[1])


def cmd_sample(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required; sampling never seeds from the clock")
    value_range = _parse_range(args.range)
    with _open_input(args.input) as src:
        docs = read_scored(src, skip_errors=args.skip_errors)
        picked = sample_around(docs, args.metric, value_range, args.k, args.seed)
    with _open_output(args.output) as sink:
        for doc in picked:
            sink.write(dump_record(scored_to_record(doc)) + "\n")
    print(f"sampled {len(picked)} documents", file=sys.stderr)
    return 0


def cmd_mix(args) -> int:
    with open(args.recipe, encoding="utf-8") as f:
        recipe = load_recipe(f)
    if args.seed is not None:
        from dataclasses import replace

        recipe = replace(recipe, seed=args.seed)
    with _open_input(args.input) as src:
        docs = _with_token_counts(read_scored(src, skip_errors=args.skip_errors), sys.stderr)
        manifest = build_manifest(docs, recipe)
    with _open_output(args.output) as sink:
        manifest.write(sink)
    for warning in manifest.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(summarize_manifest(manifest).render_text(), file=sys.stderr)
    return 0


def _add_io(parser, output=True):
    parser.add_argument("--input", default="-", help="input records file, - for stdin")
    if output:
        parser.add_argument("--output", default="-", help="output file, - for stdout")
    parser.add_argument("--skip-errors", action="store_true", help="skip bad records instead of aborting")
    parser.add_argument("--config", help="pipeline config JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="longtext",
        description="Long-text quality metrics, categorization, and mixture manifests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="compute the eight quality metrics per document")
    _add_io(p)
    p.add_argument("--min-bytes", type=int, default=None, help="keep only documents whose UTF-8 text strictly exceeds this many bytes")
    p.add_argument("--stub-lm-scorer", action="store_true", help="use the deterministic offline LM scorer")
    p.add_argument("--stub-pair-scorer", action="store_true", help="use the deterministic offline pair scorer")
    p.add_argument("--lm-endpoint", help="base URL of the remote LM scorer")
    p.add_argument("--pair-endpoint", help="base URL of the remote pair scorer")
    p.add_argument("--window-size", type=int, default=None, help="coherence window size (divisible by 4)")
    p.add_argument("--diff-sign", choices=["as_printed", "improvement"], default=None)
    p.add_argument("--jobs", type=int, default=None, help="concurrent scoring workers")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("classify", help="label scored documents via threshold config")
    _add_io(p)
    p.add_argument("--thresholds", help="threshold config JSON file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stats", help="aggregate domain/category/length statistics")
    _add_io(p)
    p.add_argument("--bucket-edges", help="comma-separated token bucket edges")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("hist", help="histogram a metric for threshold calibration")
    _add_io(p)
    p.add_argument("--metric", required=True)
    p.add_argument("--edges", required=True, help="comma-separated ascending bin edges")
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("sample", help="draw documents with a metric inside [lo, hi)")
    _add_io(p)
    p.add_argument("--metric", required=True)
    p.add_argument("--range", required=True, help="LO,HI half-open metric range")
    p.add_argument("--k", type=int, default=30, help="sample size")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("mix", help="build a deterministic training mixture manifest")
    _add_io(p)
    p.add_argument("--recipe", required=True, help="mixture recipe JSON file")
    p.add_argument("--seed", type=int, default=None, help="override the recipe seed")
    p.set_defaults(func=cmd_mix)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
