"""Corpus ingestion, micro-text cleaning and per-author known/unknown splits."""

from __future__ import annotations

import csv
import json
import random
import re
import unicodedata
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from pathlib import Path
from typing import Iterable, Mapping

MAX_MESSAGE_LENGTH = 280

URL_RE = re.compile(r"https?://\S+", re.IGNORECASE)
MENTION_RE = re.compile(r"(?<!\S)@[A-Za-z0-9_]+")
HASHTAG_RE = re.compile(r"(?<!\S)#\w+")

# order matters: URLs first so "@" or "#" inside a URL never counts separately
REMOVAL_PATTERNS = (("urls", URL_RE), ("mentions", MENTION_RE), ("hashtags", HASHTAG_RE))


class CorpusError(ValueError):
    """Invalid corpus input or an impossible split."""


@dataclass(frozen=True)
class RemovedCounts:
    mentions: int = 0
    hashtags: int = 0
    urls: int = 0

    def as_dict(self) -> dict[str, int]:
        return {"mentions": self.mentions, "hashtags": self.hashtags, "urls": self.urls}


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    author_id: str
    text: str
    created_at: str | None = None

    def as_record(self) -> dict:
        record = {"id": self.doc_id, "author": self.author_id, "text": self.text}
        if self.created_at is not None:
            record["created_at"] = self.created_at
        return record


@dataclass(frozen=True)
class CleanDocument:
    doc_id: str
    author_id: str
    clean_text: str
    removed_counts: RemovedCounts = field(default_factory=RemovedCounts)

    @property
    def is_empty(self) -> bool:
        return not self.clean_text

    def as_record(self) -> dict:
        return {
            "id": self.doc_id,
            "author": self.author_id,
            "clean_text": self.clean_text,
            "removed_counts": self.removed_counts.as_dict(),
        }

    @classmethod
    def from_record(cls, record: Mapping) -> "CleanDocument":
        return cls(
            record["id"],
            record["author"],
            record["clean_text"],
            RemovedCounts(**record.get("removed_counts", {})),
        )


@dataclass(frozen=True)
class Corpus:
    authors: tuple[str, ...]
    documents: Mapping[str, tuple[CleanDocument, ...]]

    def __len__(self) -> int:
        return len(self.authors)

    def subset(self, authors: Iterable[str]) -> "Corpus":
        authors = tuple(authors)
        missing = [a for a in authors if a not in self.documents]
        if missing:
            raise CorpusError(f"unknown authors: {missing}")
        return Corpus(authors, {a: self.documents[a] for a in authors})


@dataclass(frozen=True)
class SplitCorpus:
    authors: tuple[str, ...]
    known: Mapping[str, tuple[CleanDocument, ...]]
    unknown: Mapping[str, tuple[CleanDocument, ...]]
    train_fraction: float
    seed: int
    mode: str

    def to_json(self) -> str:
        payload = {
            "train_fraction": self.train_fraction,
            "seed": self.seed,
            "mode": self.mode,
            "known": {a: [d.as_record() for d in self.known[a]] for a in self.authors},
            "unknown": {a: [d.as_record() for d in self.unknown[a]] for a in self.authors},
        }
        return json.dumps(payload, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "SplitCorpus":
        payload = json.loads(text)
        known = {a: tuple(map(CleanDocument.from_record, docs)) for a, docs in payload["known"].items()}
        unknown = {a: tuple(map(CleanDocument.from_record, docs)) for a, docs in payload["unknown"].items()}
        return cls(
            tuple(known), known, unknown, payload["train_fraction"], payload["seed"], payload["mode"]
        )


def normalize_text(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def preprocess(text: str) -> tuple[str, RemovedCounts]:
    """Strip URLs, mentions and hashtags, then collapse whitespace.

    Removal is repeated until none of the patterns match, so a token that
    only becomes a match after a neighbour is removed (``"#a@b"``) is also
    stripped and counted. Case, punctuation and emoji are left untouched.
    """
    counts = {"mentions": 0, "hashtags": 0, "urls": 0}
    changed = True
    while changed:
        changed = False
        for name, pattern in REMOVAL_PATTERNS:
            text, n = pattern.subn("", text)
            if n:
                counts[name] += n
                changed = True
    return " ".join(text.split()), RemovedCounts(**counts)


def clean_document(doc: RawDocument) -> CleanDocument:
    clean_text, counts = preprocess(doc.text)
    return CleanDocument(doc.doc_id, doc.author_id, clean_text, counts)


def _check_record(record, lineno: int, strict_length: bool) -> RawDocument:
    if not isinstance(record, dict):
        raise CorpusError(f"line {lineno}: expected an object, got {type(record).__name__}")
    for key in ("id", "author", "text"):
        if key not in record or record[key] is None:
            raise CorpusError(f"line {lineno}: missing required field {key!r}")
        if not isinstance(record[key], str):
            raise CorpusError(f"line {lineno}: field {key!r} must be a string")
    created_at = record.get("created_at") or None
    if created_at is not None and not isinstance(created_at, str):
        raise CorpusError(f"line {lineno}: field 'created_at' must be a string")
    text = normalize_text(record["text"])
    if not text.strip():
        raise CorpusError(f"line {lineno}: empty text")
    if strict_length and len(text) > MAX_MESSAGE_LENGTH:
        raise CorpusError(
            f"line {lineno}: text has {len(text)} characters (limit {MAX_MESSAGE_LENGTH})"
        )
    return RawDocument(record["id"], normalize_text(record["author"]), text, created_at)


def _iter_jsonl(path: Path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None


def _iter_csv(path: Path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return
        missing = {"id", "author", "text"} - set(reader.fieldnames)
        if missing:
            raise CorpusError(f"line 1: CSV header lacks columns {sorted(missing)}")
        for row in reader:
            if None in row:
                raise CorpusError(f"line {reader.line_num}: too many fields")
            yield reader.line_num, row


def infer_format(path: str | Path) -> str:
    return "csv" if str(path).lower().endswith(".csv") else "jsonl"


def read_documents(path: str | Path, format: str | None = None, strict_length: bool = False) -> list[RawDocument]:
    path = Path(path)
    format = format or infer_format(path)
    if format not in ("jsonl", "csv"):
        raise CorpusError(f"unsupported corpus format {format!r}")
    records = _iter_jsonl(path) if format == "jsonl" else _iter_csv(path)
    try:
        docs = [_check_record(record, lineno, strict_length) for lineno, record in records]
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    if not docs:
        raise CorpusError(f"{path}: corpus file is empty")
    return docs


def build_corpus(docs: Iterable[RawDocument]) -> Corpus:
    grouped: dict[str, list[CleanDocument]] = {}
    for doc in docs:
        grouped.setdefault(doc.author_id, []).append(clean_document(doc))
    if not grouped:
        raise CorpusError("corpus is empty")
    too_small = [a for a, ds in grouped.items() if len(ds) < 2]
    if too_small:
        raise CorpusError(f"authors with fewer than 2 documents: {too_small}")
    return Corpus(tuple(grouped), {a: tuple(ds) for a, ds in grouped.items()})


def load_corpus(path: str | Path, format: str | None = None, strict_length: bool = False) -> Corpus:
    return build_corpus(read_documents(path, format, strict_length))


def write_jsonl(docs: Iterable[RawDocument], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in docs:
            fh.write(json.dumps(doc.as_record(), ensure_ascii=False) + "\n")


def known_size(n_docs: int, train_fraction: float) -> int:
    # decimal reading of the fraction: 0.7 * 70 must give 49, not 48
    return floor(Fraction(str(train_fraction)) * n_docs)


def split_corpus(corpus: Corpus, train_fraction: float = 0.7, seed: int = 0, mode: str = "in_order") -> SplitCorpus:
    if not 0 < train_fraction < 1:
        raise CorpusError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    if mode not in ("in_order", "shuffled"):
        raise CorpusError(f"unknown split mode {mode!r}")
    known, unknown, degenerate = {}, {}, []
    for author in corpus.authors:
        docs = list(corpus.documents[author])
        k = known_size(len(docs), train_fraction)
        if k == 0 or k == len(docs):
            degenerate.append(author)
            continue
        if mode == "shuffled":
            random.Random(f"{seed}:{author}").shuffle(docs)
        known[author] = tuple(docs[:k])
        unknown[author] = tuple(docs[k:])
    if degenerate:
        raise CorpusError(
            f"train_fraction {train_fraction} leaves an empty known or unknown part for: {degenerate}"
        )
    return SplitCorpus(corpus.authors, known, unknown, train_fraction, seed, mode)
