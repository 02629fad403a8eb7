"""Accuracy sweeps over growing author sets and their reports."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

from .attribution import (
    AuthorProfile,
    FeatureKind,
    ProfileConfig,
    build_profile,
    build_query,
    check_compatible,
    fuse_scores,
    rank,
    score_candidates,
)
from .corpus import Corpus, split_corpus
from .similarity import DISTANCES, Metric, sparse_distance

DEFAULT_COUNTS = tuple(range(5, 41, 5))
DEFAULT_FEATURES = tuple(
    map(FeatureKind.parse, ("char3", "char4", "word2", "word3", "lexical", "structural", "idiosyncratic"))
)
ACCURACY_HEADER = ("feature", "metric", "author_count", "accuracy")
TABLE_HEADER = ("feature", "metric", "author_count", "true_author", "predicted", "best_score", "tie", "correct")
_METRIC_ORDER = {m: i for i, m in enumerate(Metric)}


@dataclass(frozen=True)
class SweepConfig:
    author_counts: tuple[int, ...] = DEFAULT_COUNTS
    features: tuple[FeatureKind, ...] = DEFAULT_FEATURES
    metrics: tuple[Metric, ...] = DISTANCES
    train_fraction: float = 0.7
    seed: int = 0
    selection: str = "in_order"
    split_mode: str = "in_order"
    fused: bool = False
    # n-gram families only run at these counts when set (e.g. (10,) for a 10-author subset)
    ngram_author_counts: tuple[int, ...] | None = None

    def __post_init__(self):
        counts = list(self.author_counts)
        if not counts or any(b <= a for a, b in zip(counts, counts[1:])):
            raise ValueError(f"author_counts must be non-empty and strictly ascending, got {counts}")
        if counts[0] < 2:
            raise ValueError("every author count must be at least 2")
        if self.selection not in ("in_order", "random"):
            raise ValueError(f"unknown selection {self.selection!r}")
        for m in self.metrics:
            if Metric(m) not in DISTANCES:
                raise ValueError(f"sweep metrics must be distances, got {m}")

    def metrics_for(self, feature: FeatureKind) -> tuple[Metric, ...]:
        if feature.family == "idiosyncratic":
            return (Metric.OVERLAP,)
        metrics = tuple(Metric(m) for m in self.metrics)
        return metrics + (Metric.FUSED,) if self.fused else metrics

    def counts_for(self, feature: FeatureKind) -> tuple[int, ...]:
        if feature.is_ngram and self.ngram_author_counts is not None:
            return tuple(self.ngram_author_counts)
        return tuple(self.author_counts)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["features"] = [str(f) for f in self.features]
        out["metrics"] = [str(Metric(m)) for m in self.metrics]
        out["author_counts"] = list(self.author_counts)
        if self.ngram_author_counts is not None:
            out["ngram_author_counts"] = list(self.ngram_author_counts)
        return out

    @classmethod
    def from_dict(cls, payload: Mapping) -> "SweepConfig":
        payload = dict(payload)
        if "features" in payload:
            payload["features"] = tuple(FeatureKind.parse(f) for f in payload["features"])
        if "metrics" in payload:
            payload["metrics"] = tuple(Metric(m) for m in payload["metrics"])
        for key in ("author_counts", "ngram_author_counts"):
            if payload.get(key) is not None:
                payload[key] = tuple(payload[key])
        return cls(**payload)


@dataclass(frozen=True)
class TableRow:
    true_author: str
    predicted: str
    best_score: float
    tie: bool
    correct: bool


CellKey = tuple[str, str, int]


@dataclass
class EvaluationReport:
    cells: dict[CellKey, float] = field(default_factory=dict)
    totals: dict[tuple[str, int], float] = field(default_factory=dict)
    tables: dict[CellKey, list[TableRow]] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def correct_count(self, key: CellKey) -> int:
        return sum(row.correct for row in self.tables[key])

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "cells": [
                {"feature": f, "metric": m, "author_count": k, "accuracy": acc}
                for (f, m, k), acc in self.cells.items()
            ],
            "totals": [
                {"feature": f, "author_count": k, "accuracy": acc} for (f, k), acc in self.totals.items()
            ],
            "tables": [
                {"feature": f, "metric": m, "author_count": k, "rows": [asdict(r) for r in rows]}
                for (f, m, k), rows in self.tables.items()
            ],
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "EvaluationReport":
        return cls(
            cells={(c["feature"], c["metric"], c["author_count"]): c["accuracy"] for c in payload["cells"]},
            totals={(t["feature"], t["author_count"]): t["accuracy"] for t in payload["totals"]},
            tables={
                (t["feature"], t["metric"], t["author_count"]): [TableRow(**r) for r in t["rows"]]
                for t in payload["tables"]
            },
            config=payload.get("config", {}),
        )


def select_authors(corpus: Corpus, count: int, selection: str = "in_order", seed: int = 0) -> tuple[str, ...]:
    """First ``count`` authors, or a seeded sample whose prefixes nest across counts."""
    if count > len(corpus.authors):
        raise ValueError(f"requested {count} authors but corpus has {len(corpus.authors)}")
    if selection == "in_order":
        return corpus.authors[:count]
    pool = random.Random(seed).sample(list(corpus.authors), len(corpus.authors))
    return tuple(pool[:count])


class _Scorer:
    """Caches query-vs-profile n-gram distances, which do not depend on the candidate set."""

    def __init__(self, profiles: Mapping[str, AuthorProfile], queries: Mapping[str, AuthorProfile]):
        self.profiles, self.queries = profiles, queries
        self._cache: dict = {}

    def _ngram(self, q: str, c: str, feature: FeatureKind, metric: Metric) -> float:
        key = (q, c, feature, metric)
        if key not in self._cache:
            self._cache[key] = sparse_distance(
                self.queries[q].ngrams(feature).freqs, self.profiles[c].ngrams(feature).freqs, metric
            )
        return self._cache[key]

    def scores(self, q: str, candidates: Sequence[str], feature: FeatureKind, metric: Metric) -> list[float]:
        if feature.is_ngram and metric in DISTANCES:
            return [self._ngram(q, c, feature, metric) for c in candidates]
        if feature.is_ngram and metric is Metric.FUSED:
            return fuse_scores([self.scores(q, candidates, feature, m) for m in DISTANCES])
        return score_candidates(self.queries[q], [self.profiles[c] for c in candidates], feature, metric)


def run_sweep(corpus: Corpus, config: SweepConfig = SweepConfig(), profile_config: ProfileConfig = ProfileConfig()) -> EvaluationReport:
    """Closed-set attribution of every selected author's unknown part against the known profiles."""
    features = list(config.features)
    for feature in features:
        if feature.family == "idiosyncratic" and not profile_config.dictionary:
            raise ValueError("idiosyncratic features need a dictionary")
    char_orders = sorted({f.n for f in features if f.family == "char_ngram"})
    word_orders = sorted({f.n for f in features if f.family == "word_ngram"})
    profile_config = ProfileConfig(
        tuple(char_orders), tuple(word_orders), profile_config.dictionary, profile_config.slang_lexicon
    )
    max_count = max(max(config.counts_for(f)) for f in features)
    pool = select_authors(corpus, max_count, config.selection, config.seed)
    split = split_corpus(corpus.subset(pool), config.train_fraction, config.seed, config.split_mode)
    profiles = {a: build_profile(a, split.known[a], profile_config) for a in pool}
    queries = {a: build_query(split.unknown[a], profile_config, author_id=a) for a in pool}
    scorer = _Scorer(profiles, queries)

    report = EvaluationReport(config=config.to_dict())
    for feature in sorted(features):
        metrics = sorted(config.metrics_for(feature), key=_METRIC_ORDER.__getitem__)
        for metric in metrics:
            check_compatible(feature, metric)
            for k in config.counts_for(feature):
                candidates = pool[:k]
                rows = []
                for author in candidates:
                    scores = scorer.scores(author, candidates, feature, metric)
                    result = rank(candidates, scores, feature, metric, query_author_id=author)
                    rows.append(
                        TableRow(author, result.predicted, result.best_score, result.tie, bool(result.correct))
                    )
                key = (str(feature), str(metric), k)
                report.tables[key] = rows
                report.cells[key] = sum(r.correct for r in rows) / k
        for k in config.counts_for(feature):
            accs = [report.cells[(str(feature), str(m), k)] for m in metrics if m is not Metric.FUSED]
            report.totals[(str(feature), k)] = sum(accs) / len(accs)
    return report


def render_report(report: EvaluationReport, format: str) -> bytes:
    if not report.cells:
        raise ValueError("cannot render an empty report")
    if format == "json":
        return (json.dumps(report.to_dict(), ensure_ascii=False, indent=1) + "\n").encode("utf-8")
    if format == "csv":
        return _csv(ACCURACY_HEADER, ((f, m, k, repr(acc)) for (f, m, k), acc in report.cells.items()))
    if format == "table_csv":
        return _csv(
            TABLE_HEADER,
            (
                (f, m, k, r.true_author, r.predicted, repr(r.best_score), str(r.tie).lower(), str(r.correct).lower())
                for (f, m, k), rows in report.tables.items()
                for r in rows
            ),
        )
    if format == "markdown":
        return _markdown(report).encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def _csv(header, rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def format_cell(row: TableRow) -> str:
    text = f"{row.best_score:.4f}"
    if not row.correct:
        text += f" (mis-ID: {row.predicted})"
    if row.tie:
        text += " (tie)"
    return text


def _markdown(report: EvaluationReport) -> str:
    counts = sorted({k for (_, _, k) in report.cells})
    configs = list(dict.fromkeys((f, m) for (f, m, _) in report.cells))
    lines = ["# Attribution accuracy", ""]
    lines.append("| feature | metric | " + " | ".join(str(k) for k in counts) + " |")
    lines.append("|---|---|" + "---|" * len(counts))
    for f, m in configs:
        vals = [report.cells.get((f, m, k)) for k in counts]
        lines.append(f"| {f} | {m} | " + " | ".join("" if v is None else f"{v:.3f}" for v in vals) + " |")
    features = list(dict.fromkeys(f for f, _ in report.totals))
    for f in features:
        vals = [report.totals.get((f, k)) for k in counts]
        lines.append(f"| {f} | total | " + " | ".join("" if v is None else f"{v:.3f}" for v in vals) + " |")
    lines += ["", "# Shortest distance per author", ""]
    lines.append("Scores are distances (1 - Jaccard for overlap). `(mis-ID: x)` marks a wrong prediction, "
                 "`(tie)` a best score shared with another author.")
    for k in counts:
        cols = [(f, m) for f, m in configs if (f, m, k) in report.tables]
        if not cols:
            continue
        lines += ["", f"## {k} authors", ""]
        lines.append("| author | " + " | ".join(f"{f} {m}" for f, m in cols) + " |")
        lines.append("|---|" + "---|" * len(cols))
        authors = [r.true_author for r in report.tables[(*cols[0], k)]]
        for i, author in enumerate(authors):
            cells = [format_cell(report.tables[(f, m, k)][i]) for f, m in cols]
            lines.append(f"| {author} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
