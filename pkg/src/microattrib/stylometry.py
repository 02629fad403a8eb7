"""Lexical, structural and idiosyncratic style features."""

from __future__ import annotations

import re
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import AbstractSet, Iterable, Sequence

from .corpus import CleanDocument
from .ngram import tokenize

LEXICAL_FEATURES = (
    "uppercase_ratio",
    "digit_ratio",
    "special_char_ratio",
    "whitespace_ratio",
    "avg_word_length",
    "type_token_ratio",
    "hapax_ratio",
    "avg_words_per_sentence",
)
STRUCTURAL_FEATURES = (
    "avg_chars_per_doc",
    "avg_words_per_doc",
    "avg_sentences_per_doc",
    "avg_mentions_per_doc",
    "avg_hashtags_per_doc",
    "avg_urls_per_doc",
)
CATALOG = {"lexical": LEXICAL_FEATURES, "structural": STRUCTURAL_FEATURES}
RATIO_FEATURES = frozenset(LEXICAL_FEATURES[:4] + ("type_token_ratio", "hapax_ratio"))

_SENTENCE_RE = re.compile(r"[^.!?]*[.!?]+|[^.!?]+")


class DegenerateFeatureWarning(UserWarning):
    """A feature had a zero denominator and was set to 0."""


@dataclass(frozen=True)
class StyloVector:
    kind: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in CATALOG:
            raise ValueError(f"unknown stylometric kind {self.kind!r}")
        if len(self.values) != len(CATALOG[self.kind]):
            raise ValueError(
                f"{self.kind} vector needs {len(CATALOG[self.kind])} values, got {len(self.values)}"
            )

    @property
    def names(self) -> tuple[str, ...]:
        return CATALOG[self.kind]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.values))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "values": list(self.values)}

    @classmethod
    def from_dict(cls, payload) -> "StyloVector":
        return cls(payload["kind"], tuple(float(v) for v in payload["values"]))


@dataclass(frozen=True)
class IdiosyncrasySet:
    misspelt: frozenset[str] = frozenset()
    slang: frozenset[str] = frozenset()

    @property
    def tokens(self) -> frozenset[str]:
        return self.misspelt | self.slang

    def is_empty(self) -> bool:
        return not (self.misspelt or self.slang)

    def to_dict(self) -> dict:
        return {"misspelt": sorted(self.misspelt), "slang": sorted(self.slang)}

    @classmethod
    def from_dict(cls, payload) -> "IdiosyncrasySet":
        return cls(frozenset(payload["misspelt"]), frozenset(payload["slang"]))


def _ratio(num: float, den: float, name: str) -> float:
    if den == 0:
        warnings.warn(f"{name}: zero denominator, using 0", DegenerateFeatureWarning, stacklevel=3)
        return 0.0
    return num / den


def count_sentences(text: str) -> int:
    """Segments ending in '.', '!', '?' or end of text that hold anything but spaces."""
    return sum(1 for seg in _SENTENCE_RE.findall(text) if seg.strip())


def lexical_features(documents: Sequence[CleanDocument]) -> StyloVector:
    texts = [d.clean_text for d in documents if d.clean_text]
    if not texts:
        raise ValueError("lexical features need at least one non-empty document")
    n_chars = upper = digits = special = space = 0
    tokens: list[str] = []
    n_sentences = 0
    for text in texts:
        n_chars += len(text)
        for ch in text:
            if ch.isspace():
                space += 1
            elif ch.isdigit():
                digits += 1
            elif ch.isalpha():
                upper += ch.isupper()
            else:
                special += 1
        tokens.extend(tokenize(text))
        n_sentences += count_sentences(text)
    freq = Counter(tokens)
    hapax = sum(1 for c in freq.values() if c == 1)
    values = (
        upper / n_chars,
        digits / n_chars,
        special / n_chars,
        space / n_chars,
        _ratio(sum(map(len, tokens)), len(tokens), "avg_word_length"),
        _ratio(len(freq), len(tokens), "type_token_ratio"),
        _ratio(hapax, len(freq), "hapax_ratio"),
        _ratio(len(tokens), n_sentences, "avg_words_per_sentence"),
    )
    return StyloVector("lexical", values)


def structural_features(documents: Sequence[CleanDocument]) -> StyloVector:
    if not documents:
        raise ValueError("structural features need at least one document")
    n = len(documents)
    totals = [0, 0, 0, 0, 0, 0]
    for doc in documents:
        rc = doc.removed_counts
        for i, v in enumerate(
            (
                len(doc.clean_text),
                len(tokenize(doc.clean_text)),
                count_sentences(doc.clean_text),
                rc.mentions,
                rc.hashtags,
                rc.urls,
            )
        ):
            totals[i] += v
    return StyloVector("structural", tuple(t / n for t in totals))


def idiosyncratic_features(
    documents: Iterable[CleanDocument],
    dictionary: AbstractSet[str],
    slang_lexicon: AbstractSet[str] = frozenset(),
) -> IdiosyncrasySet:
    """Collect out-of-dictionary words and slang used by an author.

    Only purely alphabetic tokens of two or more letters are considered;
    a slang hit takes precedence over the dictionary check.
    """
    if not dictionary:
        raise ValueError("idiosyncratic features need a non-empty dictionary")
    misspelt, slang = set(), set()
    for doc in documents:
        for token in tokenize(doc.clean_text):
            if len(token) < 2 or not token.isalpha():
                continue
            word = token.lower()
            if word in slang_lexicon:
                slang.add(word)
            elif word not in dictionary:
                misspelt.add(word)
    return IdiosyncrasySet(frozenset(misspelt), frozenset(slang))


def normalize_features(
    profiles: Sequence[StyloVector], query: StyloVector
) -> tuple[list[StyloVector], StyloVector]:
    """Min-max scale every dimension using the profiles' range only."""
    if len(profiles) < 2:
        raise ValueError("normalization needs at least 2 profiles")
    kind = query.kind
    if any(p.kind != kind for p in profiles):
        raise ValueError("all vectors must share the same kind")
    columns = list(zip(*(p.values for p in profiles)))
    lows = [min(c) for c in columns]
    spans = [max(c) - lo for c, lo in zip(columns, lows)]

    def scale(values, clip):
        out = []
        for v, lo, span in zip(values, lows, spans):
            if span == 0:
                out.append(0.0)
                continue
            x = (v - lo) / span
            out.append(min(1.0, max(0.0, x)) if clip else x)
        return tuple(out)

    return [StyloVector(kind, scale(p.values, False)) for p in profiles], StyloVector(
        kind, scale(query.values, True)
    )


def load_wordlist(path: str | Path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return frozenset(w for w in (line.strip().lower() for line in fh) if w)
