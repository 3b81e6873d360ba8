import pytest
from hypothesis import given
from hypothesis import strategies as st

from supertok.fixtures import load
from supertok.pretokenization import (
    DEFAULT_DELIMITERS,
    PreTokenPattern,
    SentenceDelimiterSet,
    pretokenize,
    split_pretokens,
    split_sentence_texts,
    split_sentences,
)

PATTERNS = list(PreTokenPattern)

text_with_scripts = st.text(
    alphabet=st.one_of(
        st.characters(min_codepoint=0x20, max_codepoint=0x7E),
        st.characters(min_codepoint=0x0900, max_codepoint=0x097F),
        st.characters(min_codepoint=0x0980, max_codepoint=0x09FF),
        st.sampled_from(list(" \n\t.!?।॥‌‍")),
        st.characters(),
    ),
    max_size=80,
)


@pytest.mark.parametrize(
    "text, pattern, expected",
    [
        ("low lower", "whitespace", ["low", " lower"]),
        ("a1234b", "script_agnostic", ["a", "123", "4", "b"]),
        ("a1234b", "gpt2", ["a", "123", "4", "b"]),
        ("I'm here", "gpt2", ["I", "'m", " here"]),
        ("x  y", "gpt2", ["x", " ", " y"]),
        ("a.,b", "boundless", ["a", ".", ",", "b"]),
        ("12", "boundless", ["1", "2"]),
    ],
)
def test_examples(text, pattern, expected):
    assert split_pretokens(text, pattern) == expected


def test_devanagari_marks():
    word = "नमस्ते"
    # न म स ् त े : letters Lo, virama and matra are Mn
    assert len(split_pretokens(word, "gpt2")) == 4
    assert split_pretokens(word, "script_agnostic") == [word]


def test_empty_input():
    assert pretokenize("", "gpt2") == []
    assert split_sentences("") == []


def test_pretoken_offsets():
    toks = pretokenize("नमस्ते world", "script_agnostic")
    assert [t.text for t in toks] == ["नमस्ते", " world"]
    assert toks[0].byte_start == 0
    assert toks[0].byte_end == toks[1].byte_start == len("नमस्ते".encode())
    assert toks[1].byte_end == len("नमस्ते world".encode())


@pytest.mark.parametrize(
    "text, expected",
    [
        ("Hi. Bye.", ["Hi.", " Bye."]),
        ("क।ख", ["क।", "ख"]),
        ("no delimiters here", ["no delimiters here"]),
        ("a\nb", ["a\n", "b"]),
        ("Wait!? ok", ["Wait!", "?", " ok"]),
    ],
)
def test_sentence_examples(text, expected):
    assert split_sentence_texts(text) == expected


def test_sentence_offsets():
    segs = split_sentences("क। b")
    assert [s.text for s in segs] == ["क।", " b"]
    assert segs[0].byte_end == segs[1].byte_start == len("क।".encode())


def test_delimiter_set_codepoints():
    d = SentenceDelimiterSet.from_codepoints("U+002E,U+0964")
    assert set(d) == {".", "।"}
    assert d.codepoints() == ["U+002E", "U+0964"]
    assert split_sentence_texts("a.b!c", d) == ["a.", "b!c"]


@pytest.mark.parametrize("bad", ["", "U+ZZZZ", "U+0041U+0042"])
def test_delimiter_set_rejects(bad):
    with pytest.raises(ValueError):
        SentenceDelimiterSet.from_codepoints(bad)


def test_default_delimiters_include_indic_marks():
    for ch in ".!?\n।॥":
        assert ch in DEFAULT_DELIMITERS


@given(text_with_scripts, st.sampled_from(PATTERNS))
def test_pretokenize_lossless(text, pattern):
    toks = pretokenize(text, pattern)
    assert "".join(t.text for t in toks) == text
    pos = 0
    for t in toks:
        assert t.byte_start == pos < t.byte_end
        assert t.text.encode("utf-8", "surrogatepass") == text.encode("utf-8", "surrogatepass")[t.byte_start : t.byte_end]
        pos = t.byte_end


@given(text_with_scripts)
def test_sentences_lossless(text):
    segs = split_sentences(text)
    assert "".join(s.text for s in segs) == text
    for s in segs[:-1]:
        assert s.text[-1] in DEFAULT_DELIMITERS
    for s in segs:
        assert not any(ch in DEFAULT_DELIMITERS for ch in s.text[:-1])


@given(text_with_scripts, st.sampled_from(PATTERNS))
def test_pretokens_nest_in_sentences(text, pattern):
    for sentence in split_sentence_texts(text):
        assert "".join(split_pretokens(sentence, pattern)) == sentence


@given(text_with_scripts, st.sampled_from(PATTERNS))
def test_deterministic(text, pattern):
    assert split_pretokens(text, pattern) == split_pretokens(text, pattern)


def test_devanagari_fixture_direction():
    text = load("hin")
    assert len(split_pretokens(text, "gpt2")) > len(split_pretokens(text, "script_agnostic"))
