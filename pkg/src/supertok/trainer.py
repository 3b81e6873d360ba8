"""Two-stage (subword then superword) and one-stage BPE training.

Pair frequency is the number of replacements a merge would make: occurrences
are counted left to right without overlap, so a run ``a a a`` holds one
``(a, a)``. The most frequent pair wins; ties go to the pair whose merged
byte string is bytewise smallest, then to the lower left id. A pair whose
merged bytes already name a token is never selected, which keeps learned
tokens unique.
"""

from __future__ import annotations

import heapq
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .codec import encode_chunk, sentence_chunks, to_bytes
from .model import NUM_BYTE_TOKENS, MergeRule, Stage, TokenizerModel, TrainingMode, dummy_token_bytes
from .normalization import NormalizationForm, normalize
from .pretokenization import (
    DEFAULT_DELIMITER_SET,
    PreTokenPattern,
    SentenceDelimiterSet,
    split_pretokens,
    split_sentence_texts,
)

log = logging.getLogger(__name__)


class EmptyCorpusError(ValueError):
    pass


@dataclass
class TrainerConfig:
    vocab_size: int
    transition_point: int | float | None = None
    normalization: NormalizationForm = NormalizationForm.NFKC
    pattern: PreTokenPattern = PreTokenPattern.SCRIPT_AGNOSTIC
    delims: SentenceDelimiterSet = field(default_factory=SentenceDelimiterSet)
    mode: TrainingMode = TrainingMode.TWO_STAGE
    min_pair_frequency: int = 2
    reserved_dummy_tokens: int = 0
    special_tokens: tuple[str, ...] = ()

    def __post_init__(self):
        self.normalization = NormalizationForm.parse(self.normalization)
        self.pattern = PreTokenPattern.parse(self.pattern)
        self.mode = TrainingMode.parse(self.mode)
        if not isinstance(self.delims, SentenceDelimiterSet):
            self.delims = SentenceDelimiterSet(self.delims)
        self.special_tokens = tuple(self.special_tokens)
        if self.min_pair_frequency < 0 or self.reserved_dummy_tokens < 0:
            raise ValueError("min_pair_frequency and reserved_dummy_tokens must be nonnegative")
        if self.vocab_size <= self.base_size:
            raise ValueError(
                f"vocab_size {self.vocab_size} must exceed the {self.base_size} byte/special/dummy tokens"
            )
        t = self.transition
        if not (t > NUM_BYTE_TOKENS and self.base_size <= t <= self.vocab_size):
            raise ValueError(f"transition point {t} must lie in [{self.base_size}, {self.vocab_size}] and exceed 256")

    @property
    def base_size(self) -> int:
        return NUM_BYTE_TOKENS + len(self.special_tokens) + self.reserved_dummy_tokens

    @property
    def transition(self) -> int:
        """Transition point as a token count; fractions of ``vocab_size`` are floored."""
        t = self.transition_point
        if t is None:
            return self.vocab_size
        if isinstance(t, float) and t <= 1.0:
            return math.floor(t * self.vocab_size)
        return int(t)

    def snapshot(self) -> dict:
        return {
            "vocab_size": self.vocab_size,
            "transition_point": self.transition,
            "normalization": self.normalization.value,
            "pattern": self.pattern.value,
            "sentence_delims": self.delims.codepoints(),
            "mode": self.mode.value,
            "min_pair_frequency": self.min_pair_frequency,
            "reserved_dummy_tokens": self.reserved_dummy_tokens,
            "special_tokens": list(self.special_tokens),
        }


def _as_documents(corpus) -> list[str]:
    if isinstance(corpus, str):
        return [corpus]
    return list(corpus)


def _sorted_counts(counter: Counter) -> dict:
    return dict(sorted(counter.items(), key=lambda kv: (-kv[1], kv[0])))


def count_units(
    corpus: str | Iterable[str],
    pattern: PreTokenPattern | str = PreTokenPattern.SCRIPT_AGNOSTIC,
    norm: NormalizationForm | str = NormalizationForm.NFKC,
    delims=DEFAULT_DELIMITER_SET,
) -> dict[bytes, int]:
    """Pre-token byte strings with their counts, most frequent first then bytewise."""
    counts: Counter = Counter()
    for doc in _as_documents(corpus):
        for sentence in split_sentence_texts(normalize(doc, norm), delims):
            counts.update(to_bytes(p) for p in split_pretokens(sentence, pattern))
    if not counts:
        raise EmptyCorpusError("empty training corpus")
    return _sorted_counts(counts)


def pair_counts(seq) -> Counter:
    """Non-overlapping adjacent pair counts of one sequence."""
    counts: Counter = Counter()
    last_same = -2
    for i in range(len(seq) - 1):
        a, b = seq[i], seq[i + 1]
        if a == b:
            if last_same == i - 1:
                last_same = -2
                continue
            last_same = i
        counts[(a, b)] += 1
    return counts


def _merge(seq: tuple, left: int, right: int, new_id: int) -> tuple:
    out = []
    i, n = 0, len(seq)
    while i < n:
        if i < n - 1 and seq[i] == left and seq[i + 1] == right:
            out.append(new_id)
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return tuple(out)


@dataclass
class _LearnResult:
    rules: list[tuple[int, int]]
    sequences: dict[tuple, int]
    stopped_early: bool


def learn_merges(
    sequences: dict[tuple, int],
    vocab: list[bytes],
    num_merges: int,
    min_pair_frequency: int,
) -> _LearnResult:
    """Greedy BPE over weighted id sequences; appends new tokens to ``vocab``.

    Returns the learned ``(left, right)`` pairs in rank order and the final
    sequences.
    """
    words = [list(s) for s in sequences]
    freqs = list(sequences.values())
    known = set(vocab)
    counts: Counter = Counter()
    where: dict[tuple, set] = {}
    for wi, w in enumerate(words):
        for pair, c in pair_counts(w).items():
            counts[pair] += c * freqs[wi]
            where.setdefault(pair, set()).add(wi)

    heap = [(-c, vocab[a] + vocab[b], a, b) for (a, b), c in counts.items()]
    heapq.heapify(heap)
    rules: list[tuple[int, int]] = []
    threshold = max(min_pair_frequency, 1)

    while len(rules) < num_merges:
        best = None
        while heap:
            negc, merged, a, b = heapq.heappop(heap)
            if counts.get((a, b), 0) != -negc:
                continue
            if merged in known:
                continue
            best = (-negc, merged, a, b)
            break
        if best is None or best[0] < threshold:
            break
        _, merged, a, b = best
        new_id = len(vocab)
        vocab.append(merged)
        known.add(merged)
        rules.append((a, b))

        touched: dict[tuple, int] = {}
        for wi in sorted(where.pop((a, b), ())):
            old = words[wi]
            new = list(_merge(tuple(old), a, b, new_id))
            if len(new) == len(old):
                continue
            f = freqs[wi]
            for pair, c in pair_counts(old).items():
                counts[pair] -= c * f
                touched[pair] = 1
            for pair, c in pair_counts(new).items():
                counts[pair] += c * f
                touched[pair] = 1
                where.setdefault(pair, set()).add(wi)
            words[wi] = new
        for pair in touched:
            c = counts.get(pair, 0)
            if c <= 0:
                counts.pop(pair, None)
            elif pair != (a, b):
                heapq.heappush(heap, (-c, vocab[pair[0]] + vocab[pair[1]], pair[0], pair[1]))
        counts.pop((a, b), None)

    final: Counter = Counter()
    for w, f in zip(words, freqs):
        final[tuple(w)] += f
    return _LearnResult(rules, dict(final), len(rules) < num_merges)


def _base_vocab(config: TrainerConfig) -> list[bytes]:
    vocab = [bytes([b]) for b in range(NUM_BYTE_TOKENS)]
    vocab += [s.encode("utf-8") for s in config.special_tokens]
    vocab += [dummy_token_bytes(i) for i in range(config.reserved_dummy_tokens)]
    return vocab


def _build_model(config, rules_with_stage, metadata) -> TokenizerModel:
    first = config.base_size
    merges = tuple(
        MergeRule(a, b, first + k, k, stage) for k, (a, b, stage) in enumerate(rules_with_stage)
    )
    return TokenizerModel(
        merges=merges,
        normalization=config.normalization,
        pattern=config.pattern,
        sentence_delims=config.delims,
        special_tokens=config.special_tokens,
        num_dummy_tokens=config.reserved_dummy_tokens,
        mode=config.mode,
        metadata=metadata,
    )


def train_stage1(config: TrainerConfig, unit_frequencies: dict[bytes, int]) -> TokenizerModel:
    """Word-bounded BPE up to the transition point."""
    if not unit_frequencies:
        raise EmptyCorpusError("empty training corpus")
    vocab = _base_vocab(config)
    target = config.transition - config.base_size
    seqs = {tuple(unit): c for unit, c in unit_frequencies.items()}
    result = learn_merges(seqs, vocab, target, config.min_pair_frequency)
    warnings = []
    if result.stopped_early:
        warnings.append(
            f"stage 1 stopped early at {config.base_size + len(result.rules)} tokens (target {config.transition})"
        )
    meta = {"config": config.snapshot(), "transition_id": config.base_size + len(result.rules),
            "warnings": warnings}
    for w in warnings:
        log.warning(w)
    return _build_model(config, [(a, b, Stage.SUBWORD) for a, b in result.rules], meta)


def _chunk_sequences(model: TokenizerModel, corpus, *, encode_chunks: bool) -> dict[tuple, int]:
    """Sentence-internal merge scopes of the corpus as id sequences.

    With ``encode_chunks`` each pre-token is first encoded with the model's
    subword rules; otherwise chunks are raw bytes.
    """
    counts: Counter = Counter()
    for doc in _as_documents(corpus):
        for sentence in split_sentence_texts(normalize(doc, model.normalization), model.sentence_delims):
            for chunk in sentence_chunks(split_pretokens(sentence, model.pattern), model.sentence_delims):
                if encode_chunks:
                    counts[tuple(encode_chunk(model, chunk))] += 1
                else:
                    counts[tuple(to_bytes("".join(chunk)))] += 1
    return _sorted_counts(counts)


def train_stage2(partial_model: TokenizerModel, corpus, config: TrainerConfig) -> TokenizerModel:
    """Continue merging across pre-token boundaries, within sentences, up to ``vocab_size``."""
    vocab = list(partial_model.vocab)
    # The superword budget is fixed at |V| - t even if stage 1 stopped short.
    target = min(config.vocab_size - config.transition, config.vocab_size - len(vocab))
    meta = dict(partial_model.metadata)
    warnings = list(meta.get("warnings", []))
    rules = [(r.left, r.right, r.stage) for r in partial_model.merges]
    if target > 0:
        seqs = _chunk_sequences(partial_model, corpus, encode_chunks=True)
        result = learn_merges(seqs, vocab, target, config.min_pair_frequency)
        rules += [(a, b, Stage.SUPERWORD) for a, b in result.rules]
        if result.stopped_early:
            msg = f"stage 2 stopped early at {len(vocab)} tokens (target {config.vocab_size})"
            warnings.append(msg)
            log.warning(msg)
    meta["warnings"] = warnings
    meta["config"] = config.snapshot()
    return _build_model(config, rules, meta)


def _train_one_stage(config: TrainerConfig, corpus) -> TokenizerModel:
    probe = TokenizerModel(
        merges=(),
        normalization=config.normalization,
        pattern=config.pattern,
        sentence_delims=config.delims,
        special_tokens=config.special_tokens,
        num_dummy_tokens=config.reserved_dummy_tokens,
        mode=TrainingMode.ONE_STAGE,
    )
    seqs = _chunk_sequences(probe, corpus, encode_chunks=False)
    if not seqs:
        raise EmptyCorpusError("empty training corpus")
    vocab = _base_vocab(config)
    result = learn_merges(seqs, vocab, config.vocab_size - len(vocab), config.min_pair_frequency)
    rules = []
    for k, (a, b) in enumerate(result.rules):
        text = vocab[config.base_size + k].decode("utf-8", "surrogateescape")
        crossed = len(split_pretokens(text, config.pattern)) > 1
        rules.append((a, b, Stage.SUPERWORD if crossed else Stage.SUBWORD))
    warnings = []
    if result.stopped_early:
        warnings.append(f"stopped early at {len(vocab)} tokens (target {config.vocab_size})")
        log.warning(warnings[-1])
    meta = {"config": config.snapshot(), "warnings": warnings}
    return _build_model(config, rules, meta)


def train(config: TrainerConfig, corpus: str | Iterable[str]) -> TokenizerModel:
    corpus = _as_documents(corpus)
    if config.mode is TrainingMode.ONE_STAGE:
        return _train_one_stage(config, corpus)
    units = count_units(corpus, config.pattern, config.normalization, config.delims)
    partial = train_stage1(config, units)
    return train_stage2(partial, corpus, config)
