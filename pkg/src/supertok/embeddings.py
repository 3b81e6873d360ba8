"""Embedding initialization for a swapped vocabulary and glitch-token scanning.

Embedding file layout: one JSON header line ``{"rows", "dim", "fingerprint"}``
terminated by ``\\n``, then ``rows * dim`` little-endian float32 values in
row-major order.
"""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .codec import encode_raw
from .model import TokenizerModel
from .pretokenization import split_pretokens

log = logging.getLogger(__name__)

_DTYPE = np.dtype("<f4")


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    values: np.ndarray
    fingerprint: str

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=_DTYPE)
        if v.ndim != 2:
            raise EmbeddingError("embedding matrix must be 2-D")
        object.__setattr__(self, "values", v)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @classmethod
    def for_model(cls, model: TokenizerModel, values) -> "EmbeddingMatrix":
        emb = cls(np.asarray(values), model.fingerprint())
        if emb.rows != model.vocab_size:
            raise EmbeddingError(f"matrix has {emb.rows} rows but the model has {model.vocab_size} tokens")
        return emb

    def check_bound(self, model: TokenizerModel) -> None:
        if self.fingerprint != model.fingerprint():
            raise EmbeddingError("embedding fingerprint does not match the model")
        if self.rows != model.vocab_size:
            raise EmbeddingError(f"matrix has {self.rows} rows but the model has {model.vocab_size} tokens")

    def to_bytes(self) -> bytes:
        header = json.dumps({"rows": self.rows, "dim": self.dim, "fingerprint": self.fingerprint})
        return header.encode("ascii") + b"\n" + self.values.astype(_DTYPE).tobytes(order="C")

    @classmethod
    def from_bytes(cls, data: bytes) -> "EmbeddingMatrix":
        nl = data.find(b"\n")
        try:
            header = json.loads(data[:nl])
            rows, dim = int(header["rows"]), int(header["dim"])
        except (ValueError, KeyError, TypeError):
            raise EmbeddingError("malformed embedding file header") from None
        payload = data[nl + 1 :]
        if len(payload) != rows * dim * _DTYPE.itemsize:
            raise EmbeddingError(f"expected {rows * dim} float32 values, found {len(payload)} bytes")
        body = np.frombuffer(payload, dtype=_DTYPE)
        return cls(body.reshape(rows, dim).copy(), header["fingerprint"])

    def save(self, path) -> None:
        from ._io import atomic_write_bytes

        atomic_write_bytes(path, self.to_bytes())

    @classmethod
    def load(cls, path) -> "EmbeddingMatrix":
        return cls.from_bytes(Path(path).read_bytes())

    def __eq__(self, other):
        if not isinstance(other, EmbeddingMatrix):
            return NotImplemented
        return self.fingerprint == other.fingerprint and np.array_equal(self.values, other.values)


def retok_init(old_model: TokenizerModel, old_embeddings: EmbeddingMatrix, new_model: TokenizerModel) -> EmbeddingMatrix:
    """Embeddings for ``new_model``: rows of tokens with identical bytes are
    copied; every other token gets the mean of the rows of its decomposition
    under ``old_model`` (summed in sequence order, then divided)."""
    old_embeddings.check_bound(old_model)
    if old_model.normalization is not new_model.normalization:
        raise EmbeddingError("old and new models use different normalization forms")
    old = old_embeddings.values
    bad = ~np.isfinite(old).all(axis=1)
    if bad.any():
        raise EmbeddingError(f"non-finite embedding row for token id {int(np.flatnonzero(bad)[0])}")
    lookup = old_model.bytes_to_id()
    out = np.empty((new_model.vocab_size, old_embeddings.dim), dtype=_DTYPE)
    for tid, tok in enumerate(new_model.vocab):
        src = lookup.get(tok)
        if src is not None:
            out[tid] = old[src]
            continue
        parts = encode_raw(old_model, tok)
        acc = np.zeros(old_embeddings.dim, dtype=np.float64)
        for p in parts:
            acc += old[p]
        out[tid] = (acc / len(parts)).astype(_DTYPE)
    return EmbeddingMatrix(out, new_model.fingerprint())


def cosine_distances(matrix: np.ndarray, reference: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.float64)
    ref = np.asarray(reference, dtype=np.float64)
    norms = np.linalg.norm(m, axis=1) * np.linalg.norm(ref)
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = (m @ ref) / norms
    return 1.0 - np.clip(sim, -1.0, 1.0)


def glitch_scan(
    embeddings: EmbeddingMatrix | np.ndarray,
    dummy_ids: Sequence[int],
    k: int,
    *,
    include_dummies: bool = False,
    exclude_ids: Iterable[int] = (),
) -> list[tuple[int, float]]:
    """Top-``k`` tokens closest (cosine distance) to the mean dummy embedding.

    Ties are broken by the lower id. Zero-norm rows are skipped with a warning.
    """
    values = embeddings.values if isinstance(embeddings, EmbeddingMatrix) else np.asarray(embeddings)
    n = values.shape[0]
    dummy_ids = list(dummy_ids)
    if not dummy_ids:
        raise ValueError("need at least one dummy token id")
    for d in dummy_ids:
        if not 0 <= d < n:
            raise IndexError(f"dummy id {d} out of range for {n} rows")
    reference = values[dummy_ids].astype(np.float64).mean(axis=0)
    if not np.linalg.norm(reference) > 0:
        warnings.warn("reference vector has zero norm; nothing to rank")
        return []
    excluded = set(exclude_ids)
    if not include_dummies:
        excluded |= set(dummy_ids)
    candidates = np.array([i for i in range(n) if i not in excluded], dtype=np.int64)
    if k > len(candidates):
        raise ValueError(f"k={k} exceeds the {len(candidates)} candidate rows")
    norms = np.linalg.norm(values[candidates].astype(np.float64), axis=1)
    zero = norms == 0
    if zero.any():
        warnings.warn(f"skipping {int(zero.sum())} zero-norm row(s): {candidates[zero][:10].tolist()}")
        candidates = candidates[~zero]
    dist = cosine_distances(values[candidates], reference)
    order = np.lexsort((candidates, dist))[:k]
    return [(int(candidates[i]), float(dist[i])) for i in order]


def is_multiword(model: TokenizerModel, token_id: int) -> bool:
    text = model.token_bytes(token_id).decode("utf-8", "surrogateescape")
    return len(split_pretokens(text, model.pattern)) > 1


def classify_scan(model: TokenizerModel, scan_result, high_id_threshold: int | None = None) -> dict[str, int]:
    """Count multi-word tokens and tokens above ``high_id_threshold`` in a scan."""
    multi = high = 0
    for tid, _ in scan_result:
        if not 0 <= tid < model.vocab_size:
            raise IndexError(f"token id {tid} out of range")
        if is_multiword(model, tid):
            multi += 1
        if high_id_threshold is not None and tid > high_id_threshold:
            high += 1
    return {"multiword": multi, "high_id": high}


def default_scan_exclusions(model: TokenizerModel) -> list[int]:
    """Byte and special token ids, excluded from glitch candidates by default."""
    return list(range(256)) + model.special_token_ids
