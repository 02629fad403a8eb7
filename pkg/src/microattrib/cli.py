"""Command-line entry point: ingest, profile, attribute, evaluate, synth.

Machine-readable JSON goes to stdout, diagnostics to stderr. Exit status is
0 on success, 2 on invalid input or usage, 1 on internal errors. Settings
resolve as command-line flag, then ``--config`` JSON file, then default.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import statistics
import sys
from pathlib import Path

from . import __version__
from .attribution import (
    FeatureKind,
    ProfileConfig,
    attribute,
    build_profile,
    build_query,
    check_compatible,
    config_hash,
    dump_json,
    load_profiles,
    save_profiles,
)
from .corpus import CleanDocument, RawDocument, build_corpus, clean_document, read_documents, split_corpus, write_jsonl
from .evaluation import DEFAULT_FEATURES, SweepConfig, render_report, run_sweep
from .similarity import DISTANCES, Metric
from .stylometry import load_wordlist
from .synthgen import DEFAULT_SPREAD, StyleParams, generate_corpus, style_to_dict

REPORT_FILES = {"json": "report.json", "csv": "accuracy.csv", "table_csv": "tables.csv", "markdown": "report.md"}


class UsageError(Exception):
    """Bad flags or inputs; maps to exit status 2."""


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, ensure_ascii=False, indent=1) + "\n")


def _file_sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class Settings:
    """Flag > config file > default lookup."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.file = {}
        if args.config:
            path = Path(args.config)
            if not path.is_file():
                raise UsageError(f"--config: no such file {path}")
            try:
                self.file = json.loads(path.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise UsageError(f"--config: invalid JSON ({exc})") from None
            if not isinstance(self.file, dict):
                raise UsageError("--config: expected a JSON object")

    def get(self, name: str, default=None):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        return self.file.get(name, default)

    def path(self, name: str, flag: str, required: bool = True, kind: str = "file") -> Path | None:
        value = self.get(name)
        if value is None:
            if required:
                raise UsageError(f"{flag} is required")
            return None
        path = Path(value)
        exists = path.is_file() if kind == "file" else path.is_dir()
        if not exists:
            raise UsageError(f"{flag}: no such {kind} {path}")
        return path

    def out_dir(self) -> Path:
        out = self.get("out")
        if out is None:
            raise UsageError("--out is required")
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        return path


def _int_list(text) -> tuple[int, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _features(values) -> tuple[FeatureKind, ...]:
    if isinstance(values, str):
        values = values.split(",")
    try:
        return tuple(FeatureKind.parse(v) for v in values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _metrics(values) -> tuple[Metric, ...]:
    if isinstance(values, str):
        values = values.split(",")
    try:
        return tuple(Metric(v.strip()) for v in values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _seed(settings: Settings, required: bool) -> int:
    seed = settings.get("seed")
    if seed is None:
        if required:
            raise UsageError("--seed is required for this mode")
        return 0
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    return seed


def _load_lexicons(settings: Settings, dictionary_required: bool) -> tuple[frozenset | None, frozenset]:
    dict_path = settings.path("dictionary", "--dictionary", required=dictionary_required)
    slang_path = settings.path("slang", "--slang", required=False)
    dictionary = load_wordlist(dict_path) if dict_path else None
    if dict_path and not dictionary:
        raise UsageError(f"--dictionary: {dict_path} holds no words")
    slang = load_wordlist(slang_path) if slang_path else frozenset()
    return dictionary, slang


def _split_settings(settings: Settings) -> tuple[float, str, int]:
    fraction = float(settings.get("train_fraction", 0.7))
    mode = settings.get("split_mode", "in_order")
    return fraction, mode, _seed(settings, required=mode == "shuffled")


# -- commands ----------------------------------------------------------------


def cmd_ingest(settings: Settings) -> int:
    path = settings.path("corpus", "corpus")
    docs = read_documents(path, settings.get("format"), bool(settings.get("strict_length", False)))
    corpus = build_corpus(docs)
    sizes = [len(corpus.documents[a]) for a in corpus.authors]
    summary = {
        "authors": len(corpus.authors),
        "documents": len(docs),
        "docs_per_author": {"min": min(sizes), "median": statistics.median(sizes), "max": max(sizes)},
        "empty_after_preprocessing": sum(d.is_empty for a in corpus.authors for d in corpus.documents[a]),
        "author_ids": list(corpus.authors),
    }
    if settings.get("out") is not None:
        out = settings.out_dir()
        write_jsonl(docs, out / "corpus.jsonl")
        dump_json(summary, out / "summary.json")
    _emit(summary)
    return 0


def cmd_profile(settings: Settings) -> int:
    corpus_path = settings.path("corpus", "--corpus")
    dictionary, slang = _load_lexicons(settings, dictionary_required=True)
    fraction, mode, seed = _split_settings(settings)
    char_orders = _int_list(settings.get("char_orders", "3,4"))
    word_orders = _int_list(settings.get("word_orders", "2,3"))
    out = settings.out_dir()

    corpus = build_corpus(read_documents(corpus_path, settings.get("format"), bool(settings.get("strict_length", False))))
    split = split_corpus(corpus, fraction, seed, mode)
    config = ProfileConfig(char_orders, word_orders, dictionary, slang)
    profiles = [build_profile(a, split.known[a], config) for a in corpus.authors]
    extra = {
        "corpus_sha256": _file_sha256(corpus_path),
        "train_fraction": fraction,
        "split_mode": mode,
        "seed": seed,
        "version": __version__,
    }
    manifest = save_profiles(out, profiles, config, extra)
    (out / "split.json").write_text(split.to_json() + "\n", encoding="utf-8")
    _emit({"profiles": len(profiles), "manifest": str(manifest), "config_hash": config_hash({**config.describe(), **extra})})
    return 0


def _read_messages(settings: Settings) -> list[CleanDocument]:
    text, file = settings.get("text"), settings.get("file")
    if (text is None) == (file is None):
        raise UsageError("give exactly one of --text or --file")
    if file is not None:
        path = Path(file)
        if not path.is_file():
            raise UsageError(f"--file: no such file {path}")
        lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]
    else:
        lines = [text]
    if not lines:
        raise UsageError("no text to attribute")
    return [clean_document(RawDocument(f"q{i}", "<unknown>", ln)) for i, ln in enumerate(lines)]


def cmd_attribute(settings: Settings) -> int:
    store = settings.path("profiles", "--profiles", kind="directory")
    profiles, config = load_profiles(store)
    docs = _read_messages(settings)

    available = [FeatureKind("char_ngram", n) for n in config.char_orders]
    available += [FeatureKind("word_ngram", n) for n in config.word_orders]
    available += [FeatureKind("lexical"), FeatureKind("structural")]
    if config.dictionary:
        available.append(FeatureKind("idiosyncratic"))
    features = _features(settings.get("feature")) if settings.get("feature") else tuple(available)
    missing = [str(f) for f in features if f not in available]
    if missing:
        raise UsageError(f"profile store has no {', '.join(missing)} features")
    explicit = _metrics(settings.get("metric")) if settings.get("metric") else None

    pairs = []
    for feature in features:
        for metric in explicit or feature.default_metrics():
            try:
                pairs.append((feature, check_compatible(feature, metric)))
            except ValueError as exc:
                raise UsageError(str(exc)) from None

    query = build_query(docs, config)
    results, warnings = [], []
    for feature, metric in pairs:
        result = attribute(query, profiles, feature, metric)
        if result.uninformative:
            msg = f"{feature}: query has no misspelt or slang tokens; overlap scores are uninformative"
            warnings.append(msg)
            _log("warning: " + msg)
        results.append(result.to_dict())
    _emit({"candidates": len(profiles), "results": results, "warnings": warnings})
    return 0


def cmd_evaluate(settings: Settings) -> int:
    corpus_path = settings.path("corpus", "--corpus")
    dictionary, slang = _load_lexicons(settings, dictionary_required=False)
    fraction, mode, seed = _split_settings(settings)
    selection = settings.get("selection", "in_order")
    if selection == "random":
        seed = _seed(settings, required=True)

    features = _features(settings.get("features")) if settings.get("features") else DEFAULT_FEATURES
    if dictionary is None:
        if settings.get("features") and any(f.family == "idiosyncratic" for f in features):
            raise UsageError("idiosyncratic features need --dictionary")
        if not settings.get("features"):
            _log("note: no --dictionary given, skipping idiosyncratic features")
        features = tuple(f for f in features if f.family != "idiosyncratic")
    metrics = _metrics(settings.get("metrics")) if settings.get("metrics") else DISTANCES
    ngram_counts = settings.get("ngram_counts")
    try:
        config = SweepConfig(
            author_counts=_int_list(settings.get("counts", "5,10,15,20,25,30,35,40")),
            features=features,
            metrics=metrics,
            train_fraction=fraction,
            seed=seed,
            selection=selection,
            split_mode=mode,
            fused=bool(settings.get("fused", False)),
            ngram_author_counts=_int_list(ngram_counts) if ngram_counts else None,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = settings.out_dir()

    corpus = build_corpus(read_documents(corpus_path, settings.get("format"), bool(settings.get("strict_length", False))))
    report = run_sweep(corpus, config, ProfileConfig(dictionary=dictionary, slang_lexicon=slang or frozenset()))
    for fmt, name in REPORT_FILES.items():
        (out / name).write_bytes(render_report(report, fmt))
    effective = {
        "sweep": config.to_dict(),
        "corpus_sha256": _file_sha256(corpus_path),
        "dictionary_size": len(dictionary or ()),
        "slang_lexicon_size": len(slang),
        "version": __version__,
    }
    dump_json({"config": effective, "config_hash": config_hash(effective), "artifacts": sorted(REPORT_FILES.values())},
              out / "manifest.json")
    _log(render_report(report, "markdown").decode("utf-8").split("\n# Shortest")[0])
    _emit({"cells": len(report.cells), "out": str(out), "config_hash": config_hash(effective)})
    return 0


def cmd_synth(settings: Settings) -> int:
    seed = _seed(settings, required=True)
    base_fields = {k: v for k, v in settings.file.items() if k in StyleParams.__dataclass_fields__}
    try:
        base = StyleParams.from_mapping(base_fields)
        base.validate()
        num_authors = int(settings.get("num_authors", 40))
        lo, hi = int(settings.get("msgs_min", 120)), int(settings.get("msgs_max", 200))
        spread = float(settings.get("params_spread", DEFAULT_SPREAD))
        synth = generate_corpus(num_authors, (lo, hi), spread, seed, base)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    out = settings.out_dir()
    write_jsonl(synth.documents, out / "corpus.jsonl")
    (out / "dictionary.txt").write_text("".join(w + "\n" for w in sorted(synth.dictionary)), encoding="utf-8")
    (out / "slang.txt").write_text("".join(w + "\n" for w in sorted(synth.slang_lexicon)), encoding="utf-8")
    effective = {
        "num_authors": num_authors,
        "msgs_min": lo,
        "msgs_max": hi,
        "params_spread": spread,
        "seed": seed,
        "base": style_to_dict(base),
        "version": __version__,
    }
    dump_json(
        {
            "config": effective,
            "config_hash": config_hash(effective),
            "documents": len(synth.documents),
            "authors": {a: style_to_dict(p) for a, p in synth.author_params.items()},
        },
        out / "manifest.json",
    )
    _emit({"authors": num_authors, "documents": len(synth.documents), "out": str(out)})
    return 0


COMMANDS = {
    "ingest": cmd_ingest,
    "profile": cmd_profile,
    "attribute": cmd_attribute,
    "evaluate": cmd_evaluate,
    "synth": cmd_synth,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="microattrib", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out")

    # the same global flags after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON file of settings")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="unsigned 64-bit seed")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output directory")

    def corpus_flags(p, positional=False):
        if positional:
            p.add_argument("corpus", help="corpus file (JSONL or CSV)")
        else:
            p.add_argument("--corpus", help="corpus file (JSONL or CSV)")
        p.add_argument("--format", choices=["jsonl", "csv"], help="default: inferred from extension")
        p.add_argument("--strict-length", action="store_const", const=True, help="reject texts over 280 characters")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="validate and normalise a corpus")
    corpus_flags(p, positional=True)

    p = sub.add_parser("profile", parents=[common], help="build author profiles from the known split")
    corpus_flags(p)
    p.add_argument("--dictionary", help="word list, one lowercase word per line")
    p.add_argument("--slang", help="slang/abbreviation lexicon, one word per line")
    p.add_argument("--train-fraction", type=float)
    p.add_argument("--split-mode", choices=["in_order", "shuffled"])
    p.add_argument("--char-orders", help="e.g. 3,4")
    p.add_argument("--word-orders", help="e.g. 2,3")

    p = sub.add_parser("attribute", parents=[common], help="rank stored profiles for an unknown text")
    p.add_argument("--profiles", help="profile store directory")
    p.add_argument("--text", help="unknown text")
    p.add_argument("--file", help="unknown messages, one per line, pooled into one query")
    p.add_argument("--feature", action="append", help="char3, word2, lexical, ... (repeatable)")
    p.add_argument("--metric", action="append", help="cosine, euclidean, manhattan, overlap, fused (repeatable)")

    p = sub.add_parser("evaluate", parents=[common], help="run the accuracy sweep and write reports")
    corpus_flags(p)
    p.add_argument("--dictionary")
    p.add_argument("--slang")
    p.add_argument("--counts", help="ascending author counts, default 5,10,...,40")
    p.add_argument("--ngram-counts", help="restrict n-gram features to these counts")
    p.add_argument("--features", help="comma-separated feature list")
    p.add_argument("--metrics", help="comma-separated distance list")
    p.add_argument("--train-fraction", type=float)
    p.add_argument("--split-mode", choices=["in_order", "shuffled"])
    p.add_argument("--selection", choices=["in_order", "random"])
    p.add_argument("--fused", action="store_const", const=True, help="add the fused-distance classifier")

    p = sub.add_parser("synth", parents=[common], help="generate a synthetic corpus")
    p.add_argument("--num-authors", type=int)
    p.add_argument("--msgs-min", type=int)
    p.add_argument("--msgs-max", type=int)
    p.add_argument("--params-spread", type=float)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](Settings(args))
    except (UsageError, ValueError, FileNotFoundError, UnicodeDecodeError) as exc:
        _log(f"error: {exc}")
        return 2
    except Exception as exc:  # noqa: BLE001
        _log(f"internal error: {type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
