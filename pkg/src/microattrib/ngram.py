"""Character and word n-gram frequency profiles."""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

MIN_ORDER, MAX_ORDER = 2, 4

# joins word-gram keys; str.split() treats it as whitespace so no token can hold it
SEPARATOR = "\x1f"
DISPLAY_SEPARATOR = "·"


def _check_order(n: int) -> None:
    if not isinstance(n, int) or not MIN_ORDER <= n <= MAX_ORDER:
        raise ValueError(f"n-gram order must be an integer in [{MIN_ORDER}, {MAX_ORDER}], got {n!r}")


@dataclass(frozen=True)
class NGramVector:
    """Sparse n-gram distribution backed by raw counts.

    ``count_basis`` is the number of windows the frequencies were computed
    from, which lets vectors from separate documents be pooled exactly.
    """

    unit: str
    order: int
    counts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.unit not in ("char", "word"):
            raise ValueError(f"unit must be 'char' or 'word', got {self.unit!r}")
        _check_order(self.order)

    @property
    def count_basis(self) -> int:
        return sum(self.counts.values())

    @cached_property
    def freqs(self) -> dict[str, float]:
        total = self.count_basis
        return {k: c / total for k, c in self.counts.items()}

    def __len__(self) -> int:
        return len(self.counts)

    def is_empty(self) -> bool:
        return not self.counts

    def to_dict(self) -> dict:
        if self.unit == "word":
            freqs = {k.replace(SEPARATOR, DISPLAY_SEPARATOR): f for k, f in self.freqs.items()}
        else:
            freqs = self.freqs
        return {
            "unit": self.unit,
            "order": self.order,
            "count_basis": self.count_basis,
            "freqs": dict(sorted(freqs.items())),
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "NGramVector":
        unit, order, basis = payload["unit"], payload["order"], payload["count_basis"]
        counts = {}
        for key, freq in payload["freqs"].items():
            if unit == "word":
                parts = key.split(DISPLAY_SEPARATOR)
                if len(parts) != order:
                    raise ValueError(f"ambiguous word-gram key {key!r} for order {order}")
                key = SEPARATOR.join(parts)
            counts[key] = round(freq * basis)
        return cls(unit, order, counts)


def _is_edge_symbol(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def tokenize(text: str) -> list[str]:
    """Whitespace tokens with surrounding punctuation/symbols trimmed.

    A token made only of punctuation or symbols (``"!!"``, an emoji) is
    kept whole rather than dropped.
    """
    tokens = []
    for raw in text.split():
        start, end = 0, len(raw)
        while start < end and _is_edge_symbol(raw[start]):
            start += 1
        while end > start and _is_edge_symbol(raw[end - 1]):
            end -= 1
        tokens.append(raw[start:end] if start < end else raw)
    return tokens


def extract_char_ngrams(text: str, n: int) -> NGramVector:
    _check_order(n)
    counts = Counter(text[i : i + n] for i in range(len(text) - n + 1))
    return NGramVector("char", n, dict(counts))


def extract_word_ngrams(tokens: Sequence[str], n: int) -> NGramVector:
    _check_order(n)
    counts = Counter(SEPARATOR.join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return NGramVector("word", n, dict(counts))


def merge_counts(vectors: Iterable[NGramVector]) -> NGramVector:
    """Pool raw counts of same-kind vectors, then renormalise."""
    vectors = list(vectors)
    if not vectors:
        raise ValueError("merge_counts needs at least one vector")
    unit, order = vectors[0].unit, vectors[0].order
    pooled: Counter = Counter()
    for vec in vectors:
        if (vec.unit, vec.order) != (unit, order):
            raise ValueError(
                f"cannot merge {vec.unit}/{vec.order} vector into {unit}/{order} profile"
            )
        pooled.update(vec.counts)
    return NGramVector(unit, order, dict(sorted(pooled.items())))
