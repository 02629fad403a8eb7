"""Vector distances and set overlap."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import AbstractSet, Mapping

import numpy as np


class Metric(str, Enum):
    COSINE = "cosine"
    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"
    OVERLAP = "overlap"
    FUSED = "fused"

    def __str__(self) -> str:
        return self.value


DISTANCES = (Metric.COSINE, Metric.EUCLIDEAN, Metric.MANHATTAN)


@dataclass(frozen=True)
class AlignedPair:
    u: np.ndarray
    v: np.ndarray
    keys: tuple = ()

    def __post_init__(self):
        if self.u.shape != self.v.shape or self.u.ndim != 1 or len(self.u) == 0:
            raise ValueError("aligned vectors must be 1-D, non-empty and of equal length")
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v))):
            raise ValueError("aligned vectors must be finite")

    @classmethod
    def dense(cls, u, v) -> "AlignedPair":
        return cls(np.asarray(u, dtype=float), np.asarray(v, dtype=float))


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    # rescale by the max magnitude first so tiny or huge entries neither underflow nor overflow
    mu, mv = float(np.abs(u).max()), float(np.abs(v).max())
    if mu == 0 and mv == 0:
        raise ValueError("cosine distance is undefined for two zero vectors")
    if mu == 0 or mv == 0:
        return 1.0
    u, v = u / mu, v / mv
    return max(0.0, 1.0 - float(np.dot(u, v)) / (float(np.linalg.norm(u)) * float(np.linalg.norm(v))))


def align(a: Mapping[str, float], b: Mapping[str, float]) -> AlignedPair:
    keys = sorted(a.keys() | b.keys())
    if not keys:
        raise ValueError("cannot align two empty vectors")
    u = np.array([a.get(k, 0.0) for k in keys], dtype=float)
    v = np.array([b.get(k, 0.0) for k in keys], dtype=float)
    return AlignedPair(u, v, tuple(keys))


def distance(pair: AlignedPair, kind: Metric | str) -> float:
    kind = Metric(kind)
    u, v = pair.u, pair.v
    if kind is Metric.COSINE:
        return _cosine(u, v)
    if kind is Metric.EUCLIDEAN:
        return float(np.linalg.norm(u - v))
    if kind is Metric.MANHATTAN:
        return float(np.abs(u - v).sum())
    raise ValueError(f"{kind} is not a vector distance")


def sparse_distance(a: Mapping[str, float], b: Mapping[str, float], kind: Metric | str) -> float:
    """Same as ``distance(align(a, b), kind)`` without building dense arrays."""
    kind = Metric(kind)
    if not a and not b:
        raise ValueError("cannot compare two empty vectors")
    if kind is Metric.COSINE:
        if len(a) > len(b):
            a, b = b, a
        ma = max(map(abs, a.values()), default=0.0)
        mb = max(map(abs, b.values()), default=0.0)
        if ma == 0 and mb == 0:
            raise ValueError("cosine distance is undefined for two zero vectors")
        if ma == 0 or mb == 0:
            return 1.0
        nu = math.sqrt(sum((x / ma) ** 2 for x in a.values()))
        nv = math.sqrt(sum((y / mb) ** 2 for y in b.values()))
        dot = sum((x / ma) * (b[k] / mb) for k, x in a.items() if k in b)
        return max(0.0, 1.0 - dot / (nu * nv))
    diffs = [abs(x - b.get(k, 0.0)) for k, x in a.items()]
    diffs.extend(abs(y) for k, y in b.items() if k not in a)
    if kind is Metric.EUCLIDEAN:
        return math.sqrt(sum(d * d for d in diffs))
    if kind is Metric.MANHATTAN:
        return math.fsum(diffs)
    raise ValueError(f"{kind} is not a vector distance")


def overlap_similarity(a: AbstractSet, b: AbstractSet) -> float:
    """Jaccard index; two empty sets score 0 (nothing to compare)."""
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union
