import json

import pytest

from supertok.model import (
    ModelFormatError,
    TokenizerModel,
    dummy_token_bytes,
    escape_bytes,
    unescape_bytes,
)


@pytest.mark.parametrize(
    "data, text",
    [(b"abc", "abc"), (b"a\\b", "a\\x5cb"), (b"\xe0\xa4\xb9", "\\xe0\\xa4\\xb9"), (b"\n", "\\x0a"), (b" ", " ")],
)
def test_escape(data, text):
    assert escape_bytes(data) == text
    assert unescape_bytes(text) == data


@pytest.mark.parametrize("bad", ["\\x", "\\xZZ", "é"])
def test_unescape_rejects(bad):
    with pytest.raises(ModelFormatError):
        unescape_bytes(bad)


def test_dummy_bytes_are_private_use():
    assert dummy_token_bytes(0).decode() == "\U00100000"


def test_model_file_fields(eng_dummies):
    doc = json.loads(eng_dummies.to_json())
    for key in ("version", "normalization", "pattern", "mode", "sentence_delims", "special_tokens",
                "dummy_token_ids", "vocab", "merges"):
        assert key in doc
    assert doc["dummy_token_ids"] == [256, 257, 258, 259]
    assert len(doc["vocab"]) == eng_dummies.vocab_size
    assert doc["vocab"]["65"] == "A"
    assert all(m[2] in ("subword", "superword") for m in doc["merges"])
    assert "U+002E" in doc["sentence_delims"]
    assert eng_dummies.to_json().isascii()


@pytest.mark.parametrize("fixture", ["eng_model", "eng_dummies", "onestage_model", "identity_model"])
def test_serialization_roundtrips_bit_exactly(fixture, request, tmp_path):
    model = request.getfixturevalue(fixture)
    path = tmp_path / "m.json"
    model.save(path)
    loaded = TokenizerModel.load(path)
    assert loaded == model
    assert loaded.to_json() == model.to_json() == path.read_text()
    assert loaded.fingerprint() == model.fingerprint()
    assert loaded.vocab == model.vocab


def test_rejects_tampered_vocab(eng_model):
    doc = json.loads(eng_model.to_json())
    doc["vocab"][str(eng_model.vocab_size - 1)] = "zzz"
    with pytest.raises(ModelFormatError):
        TokenizerModel.from_dict(doc)


def test_rejects_future_version(eng_model):
    doc = json.loads(eng_model.to_json())
    doc["version"] = 99
    with pytest.raises(ModelFormatError):
        TokenizerModel.from_dict(doc)


def test_prefix(eng_model):
    p = eng_model.prefix(10)
    assert p.num_learned == 10
    assert p.vocab == eng_model.vocab[: p.vocab_size]
