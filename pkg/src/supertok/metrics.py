"""Intrinsic tokenizer metrics: fertility, NSL, bytes per token, Rényi entropy."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_ALPHA = 2.5


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class LineStats:
    token_count: int
    word_count: int
    byte_count: int

    def __post_init__(self):
        if min(self.token_count, self.word_count, self.byte_count) < 0:
            raise ValueError("line statistics must be nonnegative")


def count_words(text: str) -> int:
    return len(text.split())


def _included(stats: Iterable[LineStats]) -> list[LineStats]:
    return [s for s in stats if s.word_count > 0]


def fertility(stats: Sequence[LineStats], micro: bool = True) -> float:
    """Tokens per word. ``micro`` takes the ratio of sums; otherwise the mean of per-line ratios."""
    lines = _included(stats)
    if not lines:
        raise MetricError("no words")
    if micro:
        return sum(s.token_count for s in lines) / sum(s.word_count for s in lines)
    return sum(s.token_count / s.word_count for s in lines) / len(lines)


def nsl(model_stats: Sequence[LineStats], base_stats: Sequence[LineStats]) -> float:
    """Total tokens of a model relative to a base tokenizer on the same lines."""
    if len(model_stats) != len(base_stats) or any(
        m.byte_count != b.byte_count for m, b in zip(model_stats, base_stats)
    ):
        raise MetricError("model and base statistics must cover the same lines")
    base_total = sum(s.token_count for s in base_stats)
    if base_total == 0:
        raise MetricError("base tokenizer produced zero tokens")
    return sum(s.token_count for s in model_stats) / base_total


def bytes_per_token(stats: Sequence[LineStats]) -> float:
    tokens = sum(s.token_count for s in stats)
    if tokens == 0:
        raise MetricError("zero tokens")
    return sum(s.byte_count for s in stats) / tokens


class TokenHistogram(Counter):
    """Token id -> occurrence count."""

    @classmethod
    def from_sequences(cls, sequences: Iterable[Iterable[int]]) -> "TokenHistogram":
        hist = cls()
        for seq in sequences:
            hist.update(seq)
        return hist

    def total(self) -> int:
        return sum(self.values())

    def probabilities(self) -> np.ndarray:
        counts = np.array([c for c in self.values() if c > 0], dtype=np.float64)
        return counts / counts.sum()


def _probabilities(hist) -> np.ndarray:
    if isinstance(hist, Mapping):
        counts = np.array([c for c in hist.values() if c > 0], dtype=np.float64)
    else:
        counts = np.asarray(hist, dtype=np.float64)
        counts = counts[counts > 0]
    if counts.size == 0:
        raise MetricError("empty histogram")
    return counts / counts.sum()


def renyi_entropy(hist, alpha: float = DEFAULT_ALPHA) -> float:
    """Rényi entropy in bits; ``alpha == 1`` gives Shannon entropy.

    ``hist`` is a mapping of token id to count or an array of counts.
    """
    if not alpha > 0:
        raise MetricError(f"alpha must be positive, got {alpha}")
    p = _probabilities(hist)
    if alpha == 1:
        return float(-np.sum(p * np.log2(p))) + 0.0
    # log-sum-exp keeps large alpha and tiny probabilities finite
    a = alpha * np.log(p)
    m = a.max()
    log_sum = m + math.log(np.exp(a - m).sum())
    return float(log_sum / ((1.0 - alpha) * math.log(2.0))) + 0.0


def renyi_efficiency(hist, alpha: float = DEFAULT_ALPHA, vocab_size: int | None = None) -> float:
    if vocab_size is None or vocab_size < 2:
        raise MetricError("vocab_size must be at least 2")
    return renyi_entropy(hist, alpha) / math.log2(vocab_size)
