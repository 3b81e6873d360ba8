"""Encoding and decoding with a :class:`TokenizerModel`.

Merge rules are applied in global rank order (lowest rank first). Subword
rules only join tokens inside one pre-token; superword rules may join
adjacent pre-tokens but never leave a sentence, and never touch a pre-token
that contains a sentence delimiter. One-stage models apply every rule at
that sentence-chunk scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import regex

from .model import Stage, TokenizerModel, TrainingMode
from .normalization import InvalidUTF8Error, NormalizationForm, decode_utf8, normalize
from .pretokenization import contains_delimiter, split_pretokens, split_sentence_texts

_INF = float("inf")


@dataclass(frozen=True)
class TokenSequence:
    ids: tuple[int, ...]
    source_byte_len: int

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        return iter(self.ids)

    def __getitem__(self, i):
        return self.ids[i]


def to_bytes(text: str) -> bytes:
    return text.encode("utf-8", "surrogateescape")


def merge_pair(ids: Sequence[int], left: int, right: int, new_id: int) -> list[int]:
    """Replace non-overlapping occurrences of ``(left, right)``, scanning left to right."""
    out = []
    i = 0
    n = len(ids)
    while i < n:
        if i < n - 1 and ids[i] == left and ids[i + 1] == right:
            out.append(new_id)
            i += 2
        else:
            out.append(ids[i])
            i += 1
    return out


def apply_ranked_merges(ids: list[int], ranks: dict, trace: list | None = None) -> list[int]:
    """Classic BPE: repeatedly merge the lowest-ranked adjacent pair.

    ``ranks`` maps ``(left, right)`` to ``(rank, result_id)``.
    """
    while len(ids) > 1:
        best = None
        best_rank = _INF
        for pair in zip(ids, ids[1:]):
            r = ranks.get(pair)
            if r is not None and r[0] < best_rank:
                best_rank, best = r[0], pair
        if best is None:
            break
        if trace is not None:
            trace.append(best_rank)
        ids = merge_pair(ids, best[0], best[1], ranks[best][1])
    return ids


def apply_scoped_merges(
    ids: list[int], bounds: list[bool], ranks: dict, trace: list | None = None
) -> list[int]:
    """Rank-order BPE where ``bounds[i]`` marks a pre-token boundary between
    ``ids[i]`` and ``ids[i + 1]``; only superword rules may cross one.

    ``ranks`` maps pairs to ``(rank, result_id, is_superword)``.
    """
    while len(ids) > 1:
        best = None
        best_rank = _INF
        for i in range(len(ids) - 1):
            r = ranks.get((ids[i], ids[i + 1]))
            if r is not None and r[0] < best_rank and (r[2] or not bounds[i]):
                best_rank, best = r[0], (ids[i], ids[i + 1])
        if best is None:
            break
        if trace is not None:
            trace.append(best_rank)
        _, new_id, crosses = ranks[best]
        out, out_bounds = [], []
        i, n = 0, len(ids)
        while i < n:
            if i < n - 1 and (ids[i], ids[i + 1]) == best and (crosses or not bounds[i]):
                out.append(new_id)
                out_bounds.append(bounds[i + 1] if i + 1 < n - 1 else False)
                i += 2
            else:
                out.append(ids[i])
                out_bounds.append(bounds[i] if i < n - 1 else False)
                i += 1
        ids, bounds = out, out_bounds[:-1]
    return ids


def _rank_tables(model: TokenizerModel) -> dict:
    tables = model._cache.get("ranks")
    if tables is None:
        sub, sup, scoped = {}, {}, {}
        every = {}
        for rule in model.merges:
            pair = (rule.left, rule.right)
            is_super = rule.stage is Stage.SUPERWORD
            (sup if is_super else sub).setdefault(pair, (rule.rank, rule.result))
            scoped.setdefault(pair, (rule.rank, rule.result, is_super))
            every.setdefault(pair, (rule.rank, rule.result))
        last_sub = max((r.rank for r in model.merges if r.stage is Stage.SUBWORD), default=-1)
        first_sup = min((r.rank for r in model.merges if r.stage is Stage.SUPERWORD), default=len(model.merges))
        tables = {
            "sub": sub,
            "super": sup,
            "scoped": scoped,
            "all": every,
            "ordered": last_sub < first_sup,
            "pretoken_cache": {},
        }
        model._cache["ranks"] = tables
    return tables


def sentence_chunks(pretokens: list[str], delims) -> list[list[str]]:
    """Group a sentence's pre-tokens into superword scopes.

    Pre-tokens containing a delimiter stand alone; runs of the others form
    one chunk each.
    """
    chunks: list[list[str]] = []
    run: list[str] = []
    for p in pretokens:
        if contains_delimiter(p, delims):
            if run:
                chunks.append(run)
                run = []
            chunks.append([p])
        else:
            run.append(p)
    if run:
        chunks.append(run)
    return chunks


def _encode_pretoken(model, tables, piece: str, trace) -> list[int]:
    if trace is None:
        cached = tables["pretoken_cache"].get(piece)
        if cached is not None:
            return cached
    ids = apply_ranked_merges(list(to_bytes(piece)), tables["sub"], trace)
    if trace is None:
        tables["pretoken_cache"][piece] = ids
    return ids


def encode_chunk(model: TokenizerModel, chunk: list[str], trace: list | None = None) -> list[int]:
    """Encode one superword scope given as its list of pre-tokens."""
    tables = _rank_tables(model)
    if model.mode is TrainingMode.ONE_STAGE:
        return apply_ranked_merges(list(to_bytes("".join(chunk))), tables["all"], trace)
    if tables["ordered"]:
        ids: list[int] = []
        for piece in chunk:
            ids += _encode_pretoken(model, tables, piece, trace)
        if tables["super"] and len(chunk) > 1:
            ids = apply_ranked_merges(ids, tables["super"], trace)
        return ids
    ids, bounds = [], []
    for piece in chunk:
        b = to_bytes(piece)
        if ids:
            bounds.append(True)
        ids += b
        bounds += [False] * (len(b) - 1)
    return apply_scoped_merges(ids, bounds, tables["scoped"], trace)


def encode_sentence(model: TokenizerModel, sentence: str, trace: list | None = None) -> list[int]:
    """Encode one already-normalized sentence segment."""
    out: list[int] = []
    for chunk in sentence_chunks(split_pretokens(sentence, model.pattern), model.sentence_delims):
        out += encode_chunk(model, chunk, trace)
    return out


def prepare_text(
    model: TokenizerModel,
    text: str | bytes,
    normalization: NormalizationForm | str | None = None,
    force: bool = False,
    strict: bool = True,
) -> str:
    """Decode and normalize input the way :func:`encode` does."""
    form = model.normalization
    if normalization is not None:
        requested = NormalizationForm.parse(normalization)
        if requested is not model.normalization and not force:
            raise ValueError(
                f"model was trained with {model.normalization.value}; "
                f"refusing {requested.value} without force=True"
            )
        form = requested
    if isinstance(text, (bytes, bytearray)):
        if strict:
            text = decode_utf8(bytes(text))
        else:
            # Raw-bytes mode: undecodable bytes survive as surrogates and
            # normalization is skipped.
            return bytes(text).decode("utf-8", "surrogateescape")
    return normalize(text, form)


def _special_splitter(model):
    splitter = model._cache.get("special_splitter")
    if splitter is None and model.special_tokens:
        alts = sorted(model.special_tokens, key=len, reverse=True)
        splitter = regex.compile("(" + "|".join(regex.escape(s) for s in alts) + ")")
        model._cache["special_splitter"] = splitter
    return splitter


def encode(
    model: TokenizerModel,
    text: str | bytes,
    *,
    normalization: NormalizationForm | str | None = None,
    force: bool = False,
    strict: bool = True,
    allow_special: bool = False,
    trace: list | None = None,
) -> TokenSequence:
    """Encode ``text``; any byte sequence is representable through byte fallback.

    ``trace`` (a list) receives the rank of every merge applied, in order.
    """
    text = prepare_text(model, text, normalization, force, strict)
    ids: list[int] = []
    pieces = [text]
    splitter = _special_splitter(model) if allow_special else None
    if splitter is not None:
        pieces = splitter.split(text)
    special_ids = {s: model.special_token_ids[i] for i, s in enumerate(model.special_tokens)}
    for k, piece in enumerate(pieces):
        if not piece:
            continue
        if splitter is not None and k % 2 == 1:
            ids.append(special_ids[piece])
            continue
        for sentence in split_sentence_texts(piece, model.sentence_delims):
            ids += encode_sentence(model, sentence, trace)
    return TokenSequence(tuple(ids), len(to_bytes(text)))


def encode_raw(model: TokenizerModel, data: bytes) -> list[int]:
    """Encode bytes exactly as given (no normalization, no UTF-8 check)."""
    text = data.decode("utf-8", "surrogateescape")
    ids: list[int] = []
    for sentence in split_sentence_texts(text, model.sentence_delims):
        ids += encode_sentence(model, sentence)
    return ids


def decode(model: TokenizerModel, ids: Iterable[int]) -> bytes:
    vocab = model.vocab
    n = len(vocab)
    parts = []
    for pos, i in enumerate(ids):
        if not 0 <= i < n:
            raise IndexError(f"token id {i} at position {pos} is out of range for vocabulary of size {n}")
        parts.append(vocab[i])
    return b"".join(parts)


def decode_text(model: TokenizerModel, ids: Iterable[int]) -> str:
    """Strict UTF-8 view of :func:`decode`."""
    data = decode(model, ids)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidUTF8Error(exc.start, "decoded tokens are not valid UTF-8") from None


def token_pieces(model: TokenizerModel, ids: Iterable[int]) -> list[str]:
    return [model.token_bytes(i).decode("utf-8", "backslashreplace") for i in ids]
