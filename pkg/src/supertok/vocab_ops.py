"""Rule-stacking merge of tokenizers and per-script vocabulary analysis."""

from __future__ import annotations

import logging
from collections import Counter
from typing import Sequence

import regex

from .model import MergeRule, Stage, TokenizerModel, TrainingMode

log = logging.getLogger(__name__)


class IncompatibleModelsError(ValueError):
    pass


def merge_tokenizers(models: Sequence[TokenizerModel], budgets: Sequence[int]) -> TokenizerModel:
    """Stack the first ``budgets[i]`` learned rules of each model into one model.

    Rules are interleaved round-robin by rank (rule k of every model before
    rule k + 1 of any). A rule whose result bytes already exist is dropped,
    so shared tokens appear once.
    """
    if not models:
        raise ValueError("no models to merge")
    if len(models) != len(budgets):
        raise ValueError("need exactly one budget per model")
    first = models[0]
    for m in models[1:]:
        if m.normalization is not first.normalization:
            raise IncompatibleModelsError("models use different normalization forms")
        if m.pattern is not first.pattern:
            raise IncompatibleModelsError("models use different pre-tokenization patterns")
        if m.sentence_delims != first.sentence_delims:
            raise IncompatibleModelsError("models use different sentence delimiters")
        if m.special_tokens != first.special_tokens or m.num_dummy_tokens != first.num_dummy_tokens:
            raise IncompatibleModelsError("models use different special/dummy token layouts")
        if m.mode is not first.mode:
            raise IncompatibleModelsError("models were trained in different modes")
    for i, (m, b) in enumerate(zip(models, budgets)):
        if b < 0 or b > m.num_learned:
            raise ValueError(f"budget {b} for model {i} exceeds its {m.num_learned} learned rules")

    vocab = list(first.vocab[: first.first_learned_id])
    index = {tok: i for i, tok in enumerate(vocab)}
    rules = []
    dropped = 0
    for k in range(max(budgets, default=0)):
        for m, budget in zip(models, budgets):
            if k >= budget:
                continue
            rule = m.merges[k]
            left, right = m.vocab[rule.left], m.vocab[rule.right]
            merged = left + right
            if merged in index:
                dropped += 1
                log.debug("dropping duplicate token %r", merged)
                continue
            new_id = len(vocab)
            rules.append(MergeRule(index[left], index[right], new_id, len(rules), rule.stage))
            vocab.append(merged)
            index[merged] = new_id
    if dropped:
        log.info("merge dropped %d duplicate rule(s)", dropped)
    return TokenizerModel(
        merges=tuple(rules),
        normalization=first.normalization,
        pattern=first.pattern,
        sentence_delims=first.sentence_delims,
        special_tokens=first.special_tokens,
        num_dummy_tokens=first.num_dummy_tokens,
        mode=first.mode,
        metadata={"merged_from": [m.fingerprint() for m in models], "budgets": list(budgets),
                  "dropped_duplicates": dropped},
    )


def proportional_budgets(total: int, weights: Sequence[float]) -> list[int]:
    """Split ``total`` proportionally to ``weights`` (largest remainder)."""
    s = float(sum(weights))
    raw = [total * w / s for w in weights]
    out = [int(r) for r in raw]
    order = sorted(range(len(raw)), key=lambda i: (-(raw[i] - out[i]), i))
    for i in order[: total - sum(out)]:
        out[i] += 1
    return out


# Scripts recognised by name; anything else with a script falls into "other".
SCRIPTS = (
    "Latin", "Devanagari", "Bengali", "Gurmukhi", "Gujarati", "Oriya", "Tamil", "Telugu",
    "Kannada", "Malayalam", "Sinhala", "Arabic", "Ol_Chiki", "Meetei_Mayek", "Cyrillic",
    "Greek", "Han", "Hiragana", "Katakana", "Hangul", "Thai", "Tibetan",
)
_SCRIPT_RES = [(name, regex.compile(rf"\p{{Script={name}}}")) for name in SCRIPTS]
_COMMON = regex.compile(r"\p{Script=Common}")
_INHERITED = regex.compile(r"\p{Script=Inherited}")


def char_script(ch: str) -> str:
    if _COMMON.match(ch):
        return "common"
    if _INHERITED.match(ch):
        return "inherited"
    for name, pat in _SCRIPT_RES:
        if pat.match(ch):
            return name
    return "other"


def token_script(data: bytes) -> str:
    """Majority script of a token's text; combining marks count for the
    preceding base character, and a token of only common characters is
    ``common``. Bytes that are not valid UTF-8 give ``binary``."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        return "binary"
    counts: Counter = Counter()
    order = []
    prev = "common"
    for ch in text:
        s = char_script(ch)
        if s == "inherited":
            s = prev
        prev = s
        if s != "common":
            if s not in counts:
                order.append(s)
            counts[s] += 1
    if not counts:
        return "common"
    top = max(counts.values())
    return next(s for s in order if counts[s] == top)


def script_distribution(model: TokenizerModel) -> list[tuple[str, int, float]]:
    """(script, count, percentage) over learned tokens, most frequent first."""
    counts = Counter(token_script(model.token_bytes(i)) for i in model.learned_token_ids)
    total = sum(counts.values())
    rows = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [(s, c, 100.0 * c / total) for s, c in rows]


def corpus_script_shares(texts) -> dict[str, float]:
    """Percentage of UTF-8 bytes per script (common characters excluded)."""
    counts: Counter = Counter()
    if isinstance(texts, str):
        texts = [texts]
    for text in texts:
        prev = "common"
        for ch in text:
            s = char_script(ch)
            if s == "inherited":
                s = prev
            prev = s
            if s != "common":
                counts[s] += len(ch.encode("utf-8"))
    total = sum(counts.values())
    return {s: 100.0 * c / total for s, c in sorted(counts.items())}
