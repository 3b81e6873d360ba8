"""Tokenizer model: vocabulary layout, merge rules and the JSON model file."""

from __future__ import annotations

import enum
import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .normalization import NormalizationForm
from .pretokenization import PreTokenPattern, SentenceDelimiterSet

FORMAT_VERSION = 1
NUM_BYTE_TOKENS = 256
# Supplementary Private Use Area-B; never produced by real text.
DUMMY_CODEPOINT_BASE = 0x100000


class Stage(str, enum.Enum):
    SUBWORD = "subword"
    SUPERWORD = "superword"


class TrainingMode(str, enum.Enum):
    TWO_STAGE = "twostage"
    ONE_STAGE = "onestage"

    @classmethod
    def parse(cls, value) -> "TrainingMode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        for m in cls:
            if m.value == key:
                return m
        raise ValueError(f"unknown training mode: {value!r}")


@dataclass(frozen=True)
class MergeRule:
    left: int
    right: int
    result: int
    rank: int
    stage: Stage


def dummy_token_bytes(index: int) -> bytes:
    return chr(DUMMY_CODEPOINT_BASE + index).encode("utf-8")


def escape_bytes(data: bytes) -> str:
    """Printable ASCII passes through; everything else (and backslash) becomes ``\\xNN``."""
    out = []
    for b in data:
        if 0x20 <= b < 0x7F and b != 0x5C:
            out.append(chr(b))
        else:
            out.append(f"\\x{b:02x}")
    return "".join(out)


_ESCAPE = re.compile(r"\\x([0-9a-f]{2})|([\x20-\x5b\x5d-\x7e])")


def unescape_bytes(text: str) -> bytes:
    out = bytearray()
    pos = 0
    for m in _ESCAPE.finditer(text):
        if m.start() != pos:
            break
        out.append(int(m.group(1), 16) if m.group(1) else ord(m.group(2)))
        pos = m.end()
    if pos != len(text):
        raise ModelFormatError(f"bad vocabulary entry {text!r} at character {pos}")
    return bytes(out)


class ModelFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TokenizerModel:
    """Immutable, self-contained tokenizer.

    Id layout: 0-255 single bytes, then special tokens, then dummy tokens,
    then learned tokens in merge-rank order.
    """

    merges: tuple[MergeRule, ...]
    normalization: NormalizationForm = NormalizationForm.NFKC
    pattern: PreTokenPattern = PreTokenPattern.SCRIPT_AGNOSTIC
    sentence_delims: SentenceDelimiterSet = field(default_factory=SentenceDelimiterSet)
    special_tokens: tuple[str, ...] = ()
    num_dummy_tokens: int = 0
    mode: TrainingMode = TrainingMode.TWO_STAGE
    metadata: dict = field(default_factory=dict)
    version: int = FORMAT_VERSION

    def __post_init__(self):
        vocab = [bytes([b]) for b in range(NUM_BYTE_TOKENS)]
        vocab += [s.encode("utf-8") for s in self.special_tokens]
        vocab += [dummy_token_bytes(i) for i in range(self.num_dummy_tokens)]
        first = len(vocab)
        for k, rule in enumerate(self.merges):
            if rule.rank != k or rule.result != first + k:
                raise ModelFormatError(f"merge {k} has inconsistent rank/result id")
            if not (0 <= rule.left < rule.result and 0 <= rule.right < rule.result):
                raise ModelFormatError(f"merge {k} refers to an unknown operand")
            vocab.append(vocab[rule.left] + vocab[rule.right])
        object.__setattr__(self, "_vocab", tuple(vocab))
        object.__setattr__(self, "_cache", {})

    # -- vocabulary -------------------------------------------------------

    @property
    def vocab(self) -> tuple[bytes, ...]:
        return self._vocab

    @property
    def vocab_size(self) -> int:
        return len(self._vocab)

    @property
    def first_learned_id(self) -> int:
        return NUM_BYTE_TOKENS + len(self.special_tokens) + self.num_dummy_tokens

    @property
    def special_token_ids(self) -> list[int]:
        return list(range(NUM_BYTE_TOKENS, NUM_BYTE_TOKENS + len(self.special_tokens)))

    @property
    def dummy_token_ids(self) -> list[int]:
        start = NUM_BYTE_TOKENS + len(self.special_tokens)
        return list(range(start, start + self.num_dummy_tokens))

    @property
    def learned_token_ids(self) -> range:
        return range(self.first_learned_id, self.vocab_size)

    @property
    def num_learned(self) -> int:
        return len(self.merges)

    def token_bytes(self, token_id: int) -> bytes:
        return self._vocab[token_id]

    def token_text(self, token_id: int) -> str:
        return self._vocab[token_id].decode("utf-8", "replace")

    def stage_of(self, token_id: int) -> Stage | None:
        if token_id < self.first_learned_id:
            return None
        return self.merges[token_id - self.first_learned_id].stage

    def bytes_to_id(self) -> dict[bytes, int]:
        table = self._cache.get("bytes_to_id")
        if table is None:
            table = {}
            for i, b in enumerate(self._vocab):
                table.setdefault(b, i)
            self._cache["bytes_to_id"] = table
        return table

    def prefix(self, num_merges: int) -> "TokenizerModel":
        """Model keeping only the first ``num_merges`` learned rules."""
        return TokenizerModel(
            merges=self.merges[:num_merges],
            normalization=self.normalization,
            pattern=self.pattern,
            sentence_delims=self.sentence_delims,
            special_tokens=self.special_tokens,
            num_dummy_tokens=self.num_dummy_tokens,
            mode=self.mode,
            metadata=dict(self.metadata),
        )

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "normalization": self.normalization.value,
            "pattern": self.pattern.value,
            "mode": self.mode.value,
            "sentence_delims": self.sentence_delims.codepoints(),
            "special_tokens": list(self.special_tokens),
            "dummy_token_ids": self.dummy_token_ids,
            "vocab": {str(i): escape_bytes(b) for i, b in enumerate(self._vocab)},
            "merges": [[r.left, r.right, r.stage.value] for r in self.merges],
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=True, indent=1, sort_keys=False) + "\n"

    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    def save(self, path) -> None:
        from ._io import atomic_write_text

        atomic_write_text(path, self.to_json())

    @classmethod
    def from_dict(cls, data: dict) -> "TokenizerModel":
        if data.get("version") != FORMAT_VERSION:
            raise ModelFormatError(f"unsupported model version {data.get('version')!r}")
        specials = tuple(data.get("special_tokens", []))
        dummies = data.get("dummy_token_ids", [])
        first = NUM_BYTE_TOKENS + len(specials) + len(dummies)
        if dummies != list(range(NUM_BYTE_TOKENS + len(specials), first)):
            raise ModelFormatError("dummy token ids must follow the special tokens")
        merges = tuple(
            MergeRule(int(l), int(r), first + k, k, Stage(stage))
            for k, (l, r, stage) in enumerate(data["merges"])
        )
        model = cls(
            merges=merges,
            normalization=NormalizationForm.parse(data["normalization"]),
            pattern=PreTokenPattern.parse(data["pattern"]),
            sentence_delims=SentenceDelimiterSet.from_codepoints(",".join(data["sentence_delims"])),
            special_tokens=specials,
            num_dummy_tokens=len(dummies),
            mode=TrainingMode.parse(data.get("mode", "twostage")),
            metadata=data.get("metadata", {}),
        )
        vocab = data.get("vocab")
        if vocab is not None:
            if len(vocab) != model.vocab_size:
                raise ModelFormatError("vocabulary size does not match merge list")
            for i, b in enumerate(model.vocab):
                if unescape_bytes(vocab[str(i)]) != b:
                    raise ModelFormatError(f"vocabulary entry {i} disagrees with its merge rule")
        return model

    @classmethod
    def from_json(cls, text: str) -> "TokenizerModel":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "TokenizerModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def __eq__(self, other):
        if not isinstance(other, TokenizerModel):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self):
        return (
            f"TokenizerModel(vocab_size={self.vocab_size}, merges={len(self.merges)}, "
            f"mode={self.mode.value}, pattern={self.pattern.value}, "
            f"normalization={self.normalization.value})"
        )
