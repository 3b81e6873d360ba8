import pytest

from supertok import TrainerConfig, train
from supertok.codec import encode
from supertok.fixtures import bilingual_lines, lines
from supertok.metrics import LineStats, count_words, fertility
from supertok.model import TokenizerModel
from supertok.vocab_ops import (
    IncompatibleModelsError,
    corpus_script_shares,
    merge_tokenizers,
    proportional_budgets,
    script_distribution,
    token_script,
)


def corpus_fertility(model, texts):
    return fertility([LineStats(len(encode(model, t)), count_words(t), 0) for t in texts])


def test_identical_models_collapse(eng_model):
    merged = merge_tokenizers([eng_model, eng_model], [40, 40])
    assert merged.num_learned == 40
    assert merged.vocab == eng_model.prefix(40).vocab


def test_disjoint_scripts_sum(eng_model, hin_model):
    # the first learned tokens of each model are single-script
    merged = merge_tokenizers([eng_model, hin_model], [30, 30])
    eng_part = {eng_model.token_bytes(i) for i in eng_model.learned_token_ids[:30]}
    hin_part = {hin_model.token_bytes(i) for i in hin_model.learned_token_ids[:30]}
    assert not eng_part & hin_part
    assert merged.num_learned == 60
    assert set(merged.vocab[256:]) == eng_part | hin_part


def test_round_robin_order(eng_model, hin_model):
    merged = merge_tokenizers([eng_model, hin_model], [3, 3])
    got = [merged.token_bytes(i) for i in merged.learned_token_ids]
    e = [eng_model.token_bytes(i) for i in eng_model.learned_token_ids[:3]]
    h = [hin_model.token_bytes(i) for i in hin_model.learned_token_ids[:3]]
    assert got == [e[0], h[0], e[1], h[1], e[2], h[2]]


def test_merged_model_is_valid_and_roundtrips(eng_model, hin_model, tmp_path):
    merged = merge_tokenizers([eng_model, hin_model], [100, 120])
    path = tmp_path / "m.json"
    merged.save(path)
    assert TokenizerModel.load(path) == merged
    for k, r in enumerate(merged.merges):
        assert merged.vocab[r.result] == merged.vocab[r.left] + merged.vocab[r.right]
        assert r.rank == k
    text = "The weather in the morning. आज मौसम अच्छा है।"
    from supertok.codec import decode

    assert decode(merged, encode(merged, text).ids) == text.encode()


def test_merge_deterministic(eng_model, hin_model):
    a = merge_tokenizers([eng_model, hin_model], [50, 50])
    b = merge_tokenizers([eng_model, hin_model], [50, 50])
    assert a.to_json() == b.to_json()


def test_merge_errors(eng_model, hin_model, eng_text):
    with pytest.raises(ValueError):
        merge_tokenizers([eng_model, hin_model], [eng_model.num_learned + 1, 5])
    with pytest.raises(ValueError):
        merge_tokenizers([eng_model], [5, 5])
    nfc = train(TrainerConfig(vocab_size=300, normalization="NFC"), eng_text)
    with pytest.raises(IncompatibleModelsError):
        merge_tokenizers([eng_model, nfc], [5, 5])
    gpt2 = train(TrainerConfig(vocab_size=300, pattern="gpt2"), eng_text)
    with pytest.raises(IncompatibleModelsError):
        merge_tokenizers([eng_model, gpt2], [5, 5])


def test_proportional_budgets():
    assert proportional_budgets(100, [1, 1]) == [50, 50]
    assert sum(proportional_budgets(101, [2, 1, 1])) == 101


@pytest.mark.parametrize(
    "token, script",
    [(b" the", "Latin"), ("।".encode(), "common"), (b" 12,", "common"), ("नमस्ते".encode(), "Devanagari"),
     ("ক্ষ".encode(), "Bengali"), (b"\xe0\xa4", "binary"), ("ि".encode(), "Devanagari"), ("\u0301".encode(), "common"), (" aनम".encode(), "Devanagari")],
)
def test_token_script(token, script):
    assert token_script(token) == script


def test_ascii_model_distribution(eng_subword):
    rows = script_distribution(eng_subword)
    assert {s for s, _, _ in rows} <= {"Latin", "common"}
    assert sum(p for _, _, p in rows) == pytest.approx(100.0, abs=0.01)


def test_distribution_sums_to_100(hin_model):
    assert sum(p for _, _, p in script_distribution(hin_model)) == pytest.approx(100.0, abs=0.01)


def matched_pair(total_learned, frac=0.9):
    """Two monolingual models plus a unified one with the same learned and
    superword budgets: each monolingual model gets half of both."""
    texts = bilingual_lines()
    n_eng = len(lines("eng"))
    vocab_size = 256 + total_learned
    superwords = vocab_size - int(frac * vocab_size)
    half, half_sup = total_learned // 2, superwords // 2
    parts = []
    for chunk in (texts[:n_eng], texts[n_eng:]):
        parts.append(train(TrainerConfig(vocab_size=256 + half, transition_point=256 + half - half_sup), "\n".join(chunk)))
    unified = train(TrainerConfig(vocab_size=256 + 2 * half, transition_point=256 + 2 * (half - half_sup)), "\n".join(texts))
    return parts, unified, [half, half]


@pytest.mark.parametrize("total_learned", [200, 400])
def test_merged_not_better_than_unified(total_learned):
    texts = bilingual_lines()
    parts, unified, budgets = matched_pair(total_learned)
    merged = merge_tokenizers(parts, budgets)
    assert merged.num_learned <= unified.num_learned
    assert corpus_fertility(merged, texts) >= corpus_fertility(unified, texts)


def test_script_shares_track_corpus():
    texts = bilingual_lines()
    unified = train(TrainerConfig(vocab_size=756, transition_point=0.9), "\n".join(texts))
    vocab = {s: p for s, _, p in script_distribution(unified)}
    corpus = corpus_script_shares(texts)
    for script in ("Latin", "Devanagari"):
        assert abs(vocab[script] - corpus[script]) <= 15.0
