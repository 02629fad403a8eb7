"""Author profiles and nearest-profile attribution."""

from __future__ import annotations

import base64
import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import CleanDocument
from .ngram import NGramVector, extract_char_ngrams, extract_word_ngrams, merge_counts, tokenize
from .similarity import DISTANCES, AlignedPair, Metric, distance, overlap_similarity, sparse_distance
from .stylometry import (
    IdiosyncrasySet,
    StyloVector,
    idiosyncratic_features,
    lexical_features,
    normalize_features,
    structural_features,
)

TIE_TOLERANCE = 1e-12
FAMILIES = ("char_ngram", "word_ngram", "lexical", "structural", "idiosyncratic")
_SHORT = {"char": "char_ngram", "word": "word_ngram"}


@dataclass(frozen=True, order=True)
class FeatureKind:
    family: str
    n: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown feature family {self.family!r}")
        if self.is_ngram:
            if self.n not in (2, 3, 4):
                raise ValueError(f"{self.family} needs n in [2, 4], got {self.n!r}")
        elif self.n is not None:
            raise ValueError(f"{self.family} takes no order")

    @property
    def is_ngram(self) -> bool:
        return self.family in ("char_ngram", "word_ngram")

    def __str__(self) -> str:
        if self.is_ngram:
            return f"{self.family.split('_')[0]}{self.n}"
        return self.family

    @classmethod
    def parse(cls, text: str) -> "FeatureKind":
        """Accepts ``char3``, ``word_ngram:2``, ``char_ngram(4)``, ``lexical`` ..."""
        m = re.fullmatch(r"(char|word)(?:_ngram)?[:(]?(\d)\)?", text.strip())
        if m:
            return cls(_SHORT[m.group(1)], int(m.group(2)))
        return cls(text.strip())

    def default_metrics(self) -> tuple[Metric, ...]:
        return (Metric.OVERLAP,) if self.family == "idiosyncratic" else DISTANCES


def check_compatible(feature: FeatureKind, metric: Metric | str) -> Metric:
    metric = Metric(metric)
    if feature.family == "idiosyncratic":
        if metric is not Metric.OVERLAP:
            raise ValueError(f"idiosyncratic features are compared by overlap, not {metric}")
    elif metric is Metric.OVERLAP:
        raise ValueError(f"overlap only applies to idiosyncratic features, not {feature}")
    return metric


@dataclass(frozen=True)
class ProfileConfig:
    char_orders: tuple[int, ...] = (3, 4)
    word_orders: tuple[int, ...] = (2, 3)
    dictionary: frozenset[str] | None = None
    slang_lexicon: frozenset[str] = frozenset()

    def describe(self) -> dict:
        return {
            "char_orders": list(self.char_orders),
            "word_orders": list(self.word_orders),
            "dictionary_size": len(self.dictionary or ()),
            "slang_lexicon_size": len(self.slang_lexicon),
        }


@dataclass(frozen=True)
class AuthorProfile:
    author_id: str
    char_ngrams: Mapping[int, NGramVector]
    word_ngrams: Mapping[int, NGramVector]
    lexical: StyloVector
    structural: StyloVector
    idiosyncrasy: IdiosyncrasySet | None
    doc_count: int

    def ngrams(self, feature: FeatureKind) -> NGramVector:
        table = self.char_ngrams if feature.family == "char_ngram" else self.word_ngrams
        if feature.n not in table:
            raise ValueError(f"profile {self.author_id!r} has no {feature} vector")
        return table[feature.n]

    def to_dict(self) -> dict:
        return {
            "author_id": self.author_id,
            "doc_count": self.doc_count,
            "char_ngrams": {str(n): v.to_dict() for n, v in sorted(self.char_ngrams.items())},
            "word_ngrams": {str(n): v.to_dict() for n, v in sorted(self.word_ngrams.items())},
            "lexical": self.lexical.to_dict(),
            "structural": self.structural.to_dict(),
            "idiosyncrasy": None if self.idiosyncrasy is None else self.idiosyncrasy.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "AuthorProfile":
        idio = payload.get("idiosyncrasy")
        return cls(
            payload["author_id"],
            {int(n): NGramVector.from_dict(v) for n, v in payload["char_ngrams"].items()},
            {int(n): NGramVector.from_dict(v) for n, v in payload["word_ngrams"].items()},
            StyloVector.from_dict(payload["lexical"]),
            StyloVector.from_dict(payload["structural"]),
            None if idio is None else IdiosyncrasySet.from_dict(idio),
            payload["doc_count"],
        )


def build_profile(author_id: str, docs: Sequence[CleanDocument], config: ProfileConfig = ProfileConfig()) -> AuthorProfile:
    """Pool an author's documents into a single feature profile.

    N-grams are counted per document and pooled, so no gram straddles two
    messages.
    """
    if not docs:
        raise ValueError(f"author {author_id!r} has no documents to profile")
    texts = [d.clean_text for d in docs]
    token_lists = [tokenize(t) for t in texts]
    char = {n: merge_counts(extract_char_ngrams(t, n) for t in texts) for n in config.char_orders}
    word = {n: merge_counts(extract_word_ngrams(ts, n) for ts in token_lists) for n in config.word_orders}
    idio = None
    if config.dictionary:
        idio = idiosyncratic_features(docs, config.dictionary, config.slang_lexicon)
    return AuthorProfile(
        author_id,
        char,
        word,
        lexical_features(docs),
        structural_features(docs),
        idio,
        len(docs),
    )


def build_query(unknown_docs: Sequence[CleanDocument], config: ProfileConfig = ProfileConfig(), author_id: str | None = None) -> AuthorProfile:
    """Profile for the unknown side; ``author_id`` is ground truth, used only for scoring."""
    if not unknown_docs:
        raise ValueError("query needs at least one document")
    return build_profile(author_id if author_id is not None else "<unknown>", unknown_docs, config)


@dataclass(frozen=True)
class AttributionResult:
    feature: FeatureKind
    metric: Metric
    ranking: tuple[tuple[str, float], ...]
    predicted: str
    tie: bool
    query_author_id: str | None = None
    uninformative: bool = False

    @property
    def best_score(self) -> float:
        return self.ranking[0][1]

    @property
    def correct(self) -> bool | None:
        if self.query_author_id is None:
            return None
        return self.predicted == self.query_author_id

    def to_dict(self) -> dict:
        out = {
            "feature": str(self.feature),
            "metric": str(self.metric),
            "predicted": self.predicted,
            "tie": self.tie,
            "ranking": [{"author": a, "score": s} for a, s in self.ranking],
        }
        if self.metric is Metric.OVERLAP:
            out["similarity"] = 1.0 - self.best_score
            out["uninformative"] = self.uninformative
        if self.query_author_id is not None:
            out["query_author"] = self.query_author_id
            out["correct"] = self.correct
        return out


def _minmax(values: Sequence[float]) -> list[float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.0] * len(values)
    return [(v - lo) / (hi - lo) for v in values]


def fuse_scores(per_metric: Sequence[Sequence[float]]) -> list[float]:
    """Mean of per-metric distances, each min-max scaled across the candidates."""
    scaled = [_minmax(s) for s in per_metric]
    return [sum(col) / len(col) for col in zip(*scaled)]


def score_candidates(query: AuthorProfile, profiles: Sequence[AuthorProfile], feature: FeatureKind, metric: Metric | str) -> list[float]:
    """Distance from the query to every profile (overlap is returned as 1 - Jaccard)."""
    metric = check_compatible(feature, metric)
    if metric is Metric.FUSED:
        return fuse_scores([score_candidates(query, profiles, feature, m) for m in DISTANCES])
    if feature.is_ngram:
        qf = query.ngrams(feature).freqs
        return [sparse_distance(qf, p.ngrams(feature).freqs, metric) for p in profiles]
    if feature.family in ("lexical", "structural"):
        vectors = [getattr(p, feature.family) for p in profiles]
        scaled, q = normalize_features(vectors, getattr(query, feature.family))
        return [distance(AlignedPair.dense(q.values, s.values), metric) for s in scaled]
    if query.idiosyncrasy is None or any(p.idiosyncrasy is None for p in profiles):
        raise ValueError("idiosyncratic attribution needs profiles built with a dictionary")
    qs = query.idiosyncrasy.tokens
    return [1.0 - overlap_similarity(qs, p.idiosyncrasy.tokens) for p in profiles]


def rank(author_ids: Sequence[str], scores: Sequence[float], feature: FeatureKind, metric: Metric | str,
         query_author_id: str | None = None, uninformative: bool = False) -> AttributionResult:
    """Order candidates by score; near-equal best scores go to the earliest author."""
    best = min(scores)
    cutoff = best + TIE_TOLERANCE
    order = sorted(range(len(scores)), key=lambda i: (scores[i] if scores[i] > cutoff else best, i))
    ranking = tuple((author_ids[i], float(scores[i])) for i in order)
    n_best = sum(1 for s in scores if s <= cutoff)
    return AttributionResult(
        feature, Metric(metric), ranking, ranking[0][0], n_best >= 2, query_author_id, uninformative
    )


def attribute(query: AuthorProfile, profiles: Sequence[AuthorProfile], feature: FeatureKind | str,
              metric: Metric | str, query_author_id: str | None = None) -> AttributionResult:
    if isinstance(feature, str):
        feature = FeatureKind.parse(feature)
    metric = check_compatible(feature, metric)
    if len(profiles) < 2:
        raise ValueError("attribution needs at least 2 candidate profiles")
    scores = score_candidates(query, profiles, feature, metric)
    uninformative = metric is Metric.OVERLAP and query.idiosyncrasy.is_empty()
    return rank([p.author_id for p in profiles], scores, feature, metric, query_author_id, uninformative)


# -- profile store ---------------------------------------------------------

MANIFEST = "manifest.json"


def profile_filename(author_id: str) -> str:
    return base64.urlsafe_b64encode(author_id.encode("utf-8")).decode("ascii").rstrip("=") + ".json"


def dump_json(payload, path: Path) -> None:
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def config_hash(config: Mapping) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_profiles(directory: str | Path, profiles: Sequence[AuthorProfile], config: ProfileConfig,
                  extra: Mapping | None = None) -> Path:
    """Write one JSON file per author plus a manifest recording author order."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for profile in profiles:
        dump_json(profile.to_dict(), directory / profile_filename(profile.author_id))
    (directory / "dictionary.txt").write_text(
        "".join(w + "\n" for w in sorted(config.dictionary or ())), encoding="utf-8"
    )
    (directory / "slang.txt").write_text(
        "".join(w + "\n" for w in sorted(config.slang_lexicon)), encoding="utf-8"
    )
    effective = {**config.describe(), **(extra or {})}
    manifest = {
        "authors": [{"author_id": p.author_id, "file": profile_filename(p.author_id)} for p in profiles],
        "config": effective,
        "config_hash": config_hash(effective),
    }
    dump_json(manifest, directory / MANIFEST)
    return directory / MANIFEST


def load_profiles(directory: str | Path) -> tuple[list[AuthorProfile], ProfileConfig]:
    directory = Path(directory)
    manifest_path = directory / MANIFEST
    if not manifest_path.is_file():
        raise FileNotFoundError(f"no profile store at {directory} (missing {MANIFEST})")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    profiles = [
        AuthorProfile.from_dict(json.loads((directory / entry["file"]).read_text(encoding="utf-8")))
        for entry in manifest["authors"]
    ]

    def words(name):
        path = directory / name
        return frozenset(path.read_text(encoding="utf-8").split()) if path.is_file() else frozenset()

    cfg = manifest["config"]
    config = ProfileConfig(
        tuple(cfg["char_orders"]), tuple(cfg["word_orders"]), words("dictionary.txt") or None, words("slang.txt")
    )
    return profiles, config
