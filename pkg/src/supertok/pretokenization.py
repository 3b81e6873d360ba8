"""Pre-tokenization patterns and sentence segmentation.

All splitters here are lossless: joining the pieces reproduces the input.

Pattern rule sets (normative):

``whitespace``
    ``" ?\\S+"`` units, whitespace runs kept separate; a single space binds to
    the following unit.

``gpt2``
    The GPT-2 rules: English contraction suffixes, optional space + letter
    run (``\\p{L}`` only, so combining marks break a word), optional space +
    up to three digits, optional space + run of anything else, whitespace
    runs.

``script_agnostic``
    (a) an optional single leading space binds to the unit, (b) maximal runs
    of letters, combining marks (virama, nukta and matras included) and
    ZWJ/ZWNJ form one unit in any script, followed by an optional English
    contraction suffix, (c) digits are grouped in blocks of at most three,
    (d) each run of other non-space characters is its own unit (trailing
    line breaks attach), (e) whitespace runs as in GPT-2.

``boundless``
    Word units as in ``script_agnostic``; every digit and every punctuation
    character stands alone. Used by one-stage training, where merges may
    cross these units.
"""

from __future__ import annotations

import enum
import functools
from typing import NamedTuple

import regex


class PreTokenPattern(str, enum.Enum):
    WHITESPACE = "whitespace"
    GPT2 = "gpt2"
    SCRIPT_AGNOSTIC = "script_agnostic"
    BOUNDLESS = "boundless"

    @classmethod
    def parse(cls, value: "str | PreTokenPattern") -> "PreTokenPattern":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {"gpt2style": "gpt2", "gpt_2": "gpt2", "scriptagnostic": "script_agnostic",
                   "boundlessstyle": "boundless"}
        key = aliases.get(key, key)
        for p in cls:
            if p.value == key:
                return p
        raise ValueError(f"unknown pre-tokenization pattern: {value!r}")


_WORD = r"[\p{L}\p{M}‌‍]"
_CONTRACTION = r"(?i:'s|'t|'re|'ve|'m|'ll|'d)"

_RULES = {
    PreTokenPattern.WHITESPACE: r" ?\S+|\s+(?!\S)|\s+",
    PreTokenPattern.GPT2: r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}{1,3}| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+""",
    PreTokenPattern.SCRIPT_AGNOSTIC: (
        rf" ?{_WORD}+{_CONTRACTION}?"
        r"| ?\p{N}{1,3}"
        r"| ?[^\s\p{L}\p{M}\p{N}‌‍]+[\r\n]*"
        r"|\s*[\r\n]+|\s+(?!\S)|\s+"
    ),
    PreTokenPattern.BOUNDLESS: (
        rf" ?{_WORD}+{_CONTRACTION}?"
        r"|\p{N}"
        r"| ?[^\s\p{L}\p{M}\p{N}‌‍]"
        r"|\s*[\r\n]+|\s+(?!\S)|\s+"
    ),
}

_COMPILED = {p: regex.compile(rule) for p, rule in _RULES.items()}

DEFAULT_PATTERN = PreTokenPattern.SCRIPT_AGNOSTIC


class PreToken(NamedTuple):
    text: str
    byte_start: int
    byte_end: int


# Sentence segments carry the same (text, start, end) triple.
Segment = PreToken


def _nbytes(s: str) -> int:
    return len(s.encode("utf-8", "surrogateescape"))


def _with_offsets(pieces: list[str]) -> list[PreToken]:
    out = []
    pos = 0
    for p in pieces:
        end = pos + _nbytes(p)
        out.append(PreToken(p, pos, end))
        pos = end
    return out


def split_pretokens(text: str, pattern: PreTokenPattern | str = DEFAULT_PATTERN) -> list[str]:
    """Pre-token strings only; the hot path used by training and encoding."""
    return _COMPILED[PreTokenPattern.parse(pattern)].findall(text)


def pretokenize(text: str, pattern: PreTokenPattern | str = DEFAULT_PATTERN) -> list[PreToken]:
    return _with_offsets(split_pretokens(text, pattern))


# Full stops of the supported scripts plus generic terminators.
DEFAULT_DELIMITERS = frozenset(
    {
        ".", "!", "?", "\n",
        "।",  # DEVANAGARI DANDA
        "॥",  # DEVANAGARI DOUBLE DANDA
        "؟",  # ARABIC QUESTION MARK
        "۔",  # ARABIC FULL STOP
        "෴",  # SINHALA KUNDDALIYA
        "။",  # MYANMAR SECTION
        "᱾",  # OL CHIKI MUCAAD
        "᱿",  # OL CHIKI DOUBLE MUCAAD
        "。",  # IDEOGRAPHIC FULL STOP
        "꯫",  # MEETEI MAYEK CHEIKHEI
    }
)


class SentenceDelimiterSet(frozenset):
    """Set of single-codepoint sentence delimiters."""

    def __new__(cls, delimiters=DEFAULT_DELIMITERS):
        items = frozenset(delimiters)
        if not items:
            raise ValueError("sentence delimiter set must not be empty")
        for d in items:
            if not isinstance(d, str) or len(d) != 1:
                raise ValueError(f"delimiter must be a single codepoint: {d!r}")
        return super().__new__(cls, items)

    @classmethod
    def from_codepoints(cls, spec: str) -> "SentenceDelimiterSet":
        """Parse ``"U+002E,U+0964"`` style lists."""
        chars = []
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            if item.upper().startswith("U+"):
                item = item[2:]
            chars.append(chr(int(item, 16)))
        return cls(chars)

    def codepoints(self) -> list[str]:
        return [f"U+{ord(c):04X}" for c in sorted(self)]

    def __repr__(self) -> str:
        return f"SentenceDelimiterSet({sorted(self)!r})"


DEFAULT_DELIMITER_SET = SentenceDelimiterSet()


@functools.lru_cache(maxsize=32)
def _sentence_splitter(delims: frozenset):
    cls = "".join(regex.escape(c) for c in sorted(delims))
    return regex.compile(f"(?<=[{cls}])")


def split_sentence_texts(text: str, delims=DEFAULT_DELIMITER_SET) -> list[str]:
    return [s for s in _sentence_splitter(frozenset(delims)).split(text) if s]


def split_sentences(text: str, delims=DEFAULT_DELIMITER_SET) -> list[Segment]:
    """Split after every delimiter; whitespace following a delimiter opens the next segment."""
    return _with_offsets(split_sentence_texts(text, delims))


def contains_delimiter(text: str, delims) -> bool:
    return any(ch in delims for ch in text)
