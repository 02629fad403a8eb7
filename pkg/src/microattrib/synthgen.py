"""Seeded generator of multi-author micro-text corpora.

Each author mixes a shared Zipf vocabulary with a personal one; the
``params_spread`` knob sets both the personal share and how far each
author's style rates wander from the base parameters. At spread 0 every
author writes from the same distribution.
"""

from __future__ import annotations

import string
from dataclasses import asdict, dataclass, fields, replace
from typing import Mapping

import numpy as np

from .corpus import MAX_MESSAGE_LENGTH, Corpus, RawDocument, build_corpus

DEFAULT_SPREAD = 0.6

SLANG = (
    "lol", "lmao", "omg", "idk", "tbh", "smh", "imo", "imho", "btw", "brb",
    "ngl", "rn", "fr", "ikr", "nvm", "ttyl", "fyi", "irl", "af", "ily",
    "gonna", "wanna", "gotta", "ya", "dunno", "kinda", "sorta", "yolo", "bae", "tho",
)
EMOJI = ("😂", "😭", "🔥", "❤️", "👍", "🙏", "😍", "🤔", "💯", "😅", "🙄", "✨")
ENDINGS = (".", "!", "?", "...", "!!", "")

_CONSONANTS = "bcdfghjklmnprstvwz"
_VOWELS = "aeiou"


@dataclass(frozen=True)
class StyleParams:
    vocab_seed_words: int = 150
    zipf_exponent: float = 1.1
    misspelling_rate: float = 0.04
    slang_rate: float = 0.03
    mention_rate: float = 0.3
    hashtag_rate: float = 0.2
    url_rate: float = 0.15
    uppercase_bias: float = 0.1
    mean_words_per_message: float = 14.0

    def validate(self) -> None:
        if self.vocab_seed_words < 1:
            raise ValueError("vocab_seed_words must be at least 1")
        if self.zipf_exponent <= 0 or self.mean_words_per_message <= 0:
            raise ValueError("zipf_exponent and mean_words_per_message must be positive")
        for name in ("misspelling_rate", "slang_rate", "mention_rate", "hashtag_rate", "url_rate", "uppercase_bias"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {getattr(self, name)}")

    @classmethod
    def from_mapping(cls, values: Mapping) -> "StyleParams":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in values.items() if k in names})


@dataclass(frozen=True)
class SyntheticCorpus:
    documents: tuple[RawDocument, ...]
    dictionary: frozenset[str]
    slang_lexicon: frozenset[str]
    author_params: Mapping[str, StyleParams]

    @property
    def authors(self) -> tuple[str, ...]:
        return tuple(self.author_params)

    def corpus(self) -> Corpus:
        return build_corpus(self.documents)


def _make_vocabulary(rng: np.random.Generator, size: int) -> list[str]:
    words: dict[str, None] = {}
    while len(words) < size:
        n_syll = int(rng.choice([1, 2, 2, 3, 3, 4]))
        w = "".join(
            _CONSONANTS[rng.integers(len(_CONSONANTS))] + _VOWELS[rng.integers(len(_VOWELS))]
            for _ in range(n_syll)
        )
        if rng.random() < 0.3:
            w += _CONSONANTS[rng.integers(len(_CONSONANTS))]
        if w not in SLANG:
            words[w] = None
    return list(words)


def _zipf_weights(n: int, exponent: float) -> np.ndarray:
    w = 1.0 / np.arange(1, n + 1) ** exponent
    return w / w.sum()


def _misspell(word: str, rng: np.random.Generator, forbidden) -> str | None:
    positions = [i for i in range(len(word) - 1) if word[i] != word[i + 1]]
    rng.shuffle(positions)
    for i in positions:
        candidate = word[:i] + word[i + 1] + word[i] + word[i + 2 :]
        if candidate not in forbidden:
            return candidate
    return None


def _jitter(rng: np.random.Generator, value: float, sigma: float, upper: float | None = None) -> float:
    out = value * float(np.exp(sigma * rng.standard_normal()))
    return min(out, upper) if upper is not None else out


def draw_style(base: StyleParams, spread: float, rng: np.random.Generator) -> StyleParams:
    """Per-author parameters: multiplicative log-normal noise, so zero rates stay zero."""
    rates = {
        name: _jitter(rng, getattr(base, name), spread, 1.0)
        for name in ("misspelling_rate", "slang_rate", "mention_rate", "hashtag_rate", "url_rate", "uppercase_bias")
    }
    return replace(
        base,
        vocab_seed_words=max(10, round(_jitter(rng, base.vocab_seed_words, 0.5 * spread))),
        zipf_exponent=_jitter(rng, base.zipf_exponent, 0.2 * spread),
        mean_words_per_message=_jitter(rng, base.mean_words_per_message, 0.4 * spread),
        **rates,
    )


class _AuthorWriter:
    def __init__(self, style: StyleParams, spread: float, vocab: list[str], shared_p: np.ndarray,
                 forbidden, rng: np.random.Generator):
        self.style, self.rng = style, rng
        self.vocab = vocab
        personal = rng.permutation(len(vocab))[: min(style.vocab_seed_words, len(vocab))]
        p = (1.0 - min(spread, 1.0)) * shared_p
        p[personal] += min(spread, 1.0) * _zipf_weights(len(personal), style.zipf_exponent)
        self.cdf = np.cumsum(p / p.sum())
        self.misspellings = [
            m for m in (_misspell(vocab[i], rng, forbidden) for i in personal[:12] if len(vocab[i]) >= 3) if m
        ]
        self.slang = list(rng.choice(SLANG, size=int(rng.integers(3, 7)), replace=False))
        self.emoji = list(rng.choice(EMOJI, size=2, replace=False))
        self.emoji_rate = 0.15 * spread * float(rng.random())
        ending_p = rng.dirichlet(np.full(len(ENDINGS), 1.0 / max(spread, 0.05)))
        self.ending_p = ending_p if spread > 0 else np.full(len(ENDINGS), 1.0 / len(ENDINGS))
        self.handles = [f"user{int(rng.integers(10_000))}" for _ in range(5)]

    def _draw(self) -> str:
        i = int(np.searchsorted(self.cdf, self.rng.random() * self.cdf[-1], side="right"))
        return self.vocab[min(i, len(self.vocab) - 1)]

    def _word(self) -> str:
        s, rng = self.style, self.rng
        roll = rng.random()
        if roll < s.misspelling_rate and self.misspellings:
            w = self.misspellings[rng.integers(len(self.misspellings))]
        elif roll < s.misspelling_rate + s.slang_rate:
            w = self.slang[rng.integers(len(self.slang))]
        else:
            w = self._draw()
        case = rng.random()
        if case < s.uppercase_bias / 4:
            return w.upper()
        if case < s.uppercase_bias:
            return w.capitalize()
        return w

    def message(self) -> str:
        s, rng = self.style, self.rng
        n_words = max(1, int(rng.poisson(s.mean_words_per_message)))
        n_sent = min(n_words, int(rng.integers(1, 4)))
        cuts = sorted(rng.choice(np.arange(1, n_words), size=n_sent - 1, replace=False)) if n_sent > 1 else []
        bounds = [0, *cuts, n_words]
        parts = []
        for a, b in zip(bounds, bounds[1:]):
            words = [self._word() for _ in range(b - a)]
            if rng.random() < self.emoji_rate:
                words.append(self.emoji[rng.integers(2)])
            parts.append(" ".join(words) + ENDINGS[rng.choice(len(ENDINGS), p=self.ending_p)])
        prefix, suffix = [], []
        if rng.random() < s.mention_rate:
            prefix.append("@" + self.handles[rng.integers(len(self.handles))])
        if rng.random() < s.hashtag_rate:
            suffix.append("#" + self._draw())
        if rng.random() < s.url_rate:
            token = "".join(rng.choice(list(string.ascii_letters + string.digits), size=10))
            suffix.append(f"https://t.co/{token}")
        text = " ".join(prefix + parts + suffix)
        while len(text) > MAX_MESSAGE_LENGTH:
            text = text[: text.rstrip().rfind(" ")].rstrip() if " " in text else text[:MAX_MESSAGE_LENGTH]
        return text


def generate_corpus(
    num_authors: int,
    msgs_per_author: tuple[int, int] = (120, 200),
    params_spread: float = DEFAULT_SPREAD,
    seed: int = 0,
    base: StyleParams = StyleParams(),
    vocabulary_size: int = 3000,
) -> SyntheticCorpus:
    """Generate ``num_authors`` authors with a message count drawn from ``msgs_per_author``.

    Author ``i`` draws from ``numpy.random.default_rng([seed, i + 1])``; the
    shared vocabulary uses ``[seed, 0]``. Output therefore does not depend
    on generation order.
    """
    lo, hi = msgs_per_author
    if num_authors < 2:
        raise ValueError("need at least 2 authors")
    if lo < 2 or hi < lo:
        raise ValueError(f"invalid message range {msgs_per_author}; need 2 <= min <= max")
    if params_spread < 0:
        raise ValueError("params_spread must be non-negative")
    base.validate()

    shared_rng = np.random.default_rng([seed, 0])
    vocab = _make_vocabulary(shared_rng, vocabulary_size)
    shared_rng.shuffle(vocab)
    shared_p = _zipf_weights(len(vocab), base.zipf_exponent)
    dictionary = frozenset(vocab)
    forbidden = dictionary | frozenset(SLANG)

    width = max(2, len(str(num_authors)))
    docs: list[RawDocument] = []
    params: dict[str, StyleParams] = {}
    for i in range(num_authors):
        rng = np.random.default_rng([seed, i + 1])
        author = f"author{i + 1:0{width}d}"
        style = draw_style(base, params_spread, rng)
        params[author] = style
        writer = _AuthorWriter(style, params_spread, vocab, shared_p.copy(), forbidden, rng)
        n_msgs = int(rng.integers(lo, hi + 1))
        docs.extend(RawDocument(f"{author}-{j + 1:04d}", author, writer.message()) for j in range(n_msgs))
    return SyntheticCorpus(tuple(docs), dictionary, frozenset(SLANG), params)


def style_to_dict(style: StyleParams) -> dict:
    return asdict(style)
