import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from reference import reference_encode_raw

from supertok.codec import decode, decode_text, encode, encode_raw, sentence_chunks, token_pieces
from supertok.model import MergeRule, Stage, TokenizerModel
from supertok.normalization import InvalidUTF8Error, normalize
from supertok.pretokenization import split_pretokens, split_sentence_texts, split_sentences

SP = ord(" ")


def hand_model(rules, **kw):
    merges = tuple(MergeRule(a, b, 256 + k, k, Stage(s)) for k, (a, b, s) in enumerate(rules))
    return TokenizerModel(merges=merges, **kw)


@pytest.fixture(scope="module")
def in_the_model():
    i, n, t, h, e = map(ord, "inthe")
    return hand_model(
        [(i, n, "subword"), (SP, t, "subword"), (257, h, "subword"), (258, e, "subword"), (256, 259, "superword")]
    )


def reference_encode(model, text):
    return reference_encode_raw(model, normalize(text, model.normalization).encode())


def test_single_rule():
    model = hand_model([(ord("a"), ord("b"), "subword")])
    assert encode(model, "abab").ids == (256, 256)
    assert token_pieces(model, [256, 256]) == ["ab", "ab"]


def test_superword_inside_each_sentence(in_the_model):
    seq = encode(in_the_model, "in the end. in the")
    assert in_the_model.token_text(260) == "in the"
    assert list(seq.ids) == [260, SP, *b"end", ord("."), SP, 260]
    assert decode(in_the_model, seq.ids) == b"in the end. in the"


def test_superword_blocked_by_delimiter(in_the_model):
    assert 260 not in encode(in_the_model, "in. the").ids


def test_unseen_codepoint_falls_back_to_bytes(eng_model):
    seq = encode(eng_model, "ஏ")
    assert list(seq.ids) == list("ஏ".encode())
    assert seq.source_byte_len == 3


@pytest.mark.parametrize("ids, expected", [([], b""), ([0xE0, 0xA4, 0xB9], "ह".encode())])
def test_decode_examples(eng_model, ids, expected):
    assert decode(eng_model, ids) == expected


def test_decode_out_of_range(eng_model):
    with pytest.raises(IndexError, match="position 1"):
        decode(eng_model, [5, eng_model.vocab_size])
    with pytest.raises(IndexError):
        decode(eng_model, [-1])


def test_strict_view_rejects_partial_codepoint(eng_model):
    assert decode(eng_model, [0xE0]) == b"\xe0"
    with pytest.raises(InvalidUTF8Error):
        decode_text(eng_model, [0xE0])


def test_invalid_utf8_strict_and_raw(eng_model):
    with pytest.raises(InvalidUTF8Error) as err:
        encode(eng_model, b"ab\xffcd")
    assert err.value.offset == 2
    raw = encode(eng_model, b"ab\xffcd", strict=False)
    assert decode(eng_model, raw.ids) == b"ab\xffcd"
    assert decode(eng_model, encode_raw(eng_model, b"\xc3(\x80.")) == b"\xc3(\x80."


def test_normalization_override_refused_unless_forced(eng_model):
    with pytest.raises(ValueError, match="NFKC"):
        encode(eng_model, "ﬁ", normalization="NFC")
    forced = encode(eng_model, "ﬁ", normalization="NFC", force=True)
    assert decode(eng_model, forced.ids) == "ﬁ".encode()
    assert decode(eng_model, encode(eng_model, "ﬁ").ids) == b"fi"


def test_special_tokens_only_when_allowed(eng_text):
    from supertok import TrainerConfig, train

    model = train(TrainerConfig(vocab_size=300, special_tokens=("<eos>",)), eng_text)
    assert encode(model, "a<eos>", allow_special=True).ids[-1] == 256
    assert 256 not in encode(model, "a<eos>").ids


@pytest.mark.parametrize("fixture", ["eng_model", "hin_model", "eng_subword"])
def test_matches_reference_encoder(fixture, request):
    model = request.getfixturevalue(fixture)
    from supertok.fixtures import lines

    for line in lines("eng")[::7] + lines("hin")[::11]:
        assert list(encode(model, line).ids) == reference_encode(model, line)


def test_rank_consistency_trace(eng_model):
    # Within one pre-token, merges are applied in strictly increasing rank.
    for word in ["morning", " together", " breakfast", "naïve"]:
        trace = []
        encode(eng_model, word, trace=trace)
        assert trace == sorted(set(trace))


def test_trace_scopes(eng_model):
    from supertok.fixtures import lines

    sub_max = max(r.rank for r in eng_model.merges if r.stage is Stage.SUBWORD)
    for line in lines("eng")[:50]:
        for sentence in split_sentence_texts(normalize(line)):
            for chunk in sentence_chunks(split_pretokens(sentence, eng_model.pattern), eng_model.sentence_delims):
                trace = []
                from supertok.codec import encode_chunk

                encode_chunk(eng_model, chunk, trace=trace)
                sup = [r for r in trace if r > sub_max]
                # every superword merge comes after all subword merges
                assert trace[len(trace) - len(sup):] == sup
                assert sup == sorted(set(sup))


def test_interleaved_stages_use_scoped_path():
    a, b, c = map(ord, "abc")
    # superword rank 0 before a subword rule: scoped application
    model = hand_model([(a, SP, "superword"), (b, c, "subword"), (256, b, "superword"), (256, 257, "superword")])
    # rank 1 turns "bc" into 257 before rank 2 could use the b
    assert encode(model, "a bc").ids == (259,)
    assert encode(model, "a b").ids == (258,)
    # the subword rule may not cross a pre-token boundary
    model2 = hand_model([(b, SP, "subword")])
    assert encode(model2, "b b").ids == (b, SP, b)


def test_onestage_merges_across_pretokens(onestage_model):
    cross = [r.result for r in onestage_model.merges if r.stage is Stage.SUPERWORD]
    assert cross
    text = onestage_model.token_text(cross[0])
    assert cross[0] in encode(onestage_model, text).ids


roundtrip_text = st.text(
    alphabet=st.one_of(
        st.characters(min_codepoint=0x20, max_codepoint=0x7E),
        st.characters(min_codepoint=0x0900, max_codepoint=0x097F),
        st.characters(min_codepoint=0x0980, max_codepoint=0x09FF),
        st.characters(min_codepoint=0x0B80, max_codepoint=0x0BFF),
        st.characters(min_codepoint=0x1F300, max_codepoint=0x1FAFF),
        st.sampled_from(list("\n\t।॥ ़́")),
        st.characters(blacklist_categories=("Cs",)),
    ),
    max_size=60,
)


@settings(max_examples=300, deadline=None)
@given(roundtrip_text)
def test_roundtrip_identity_model(identity_model, text):
    seq = encode(identity_model, text)
    data = decode(identity_model, seq.ids)
    assert data == text.encode()
    assert len(data) == seq.source_byte_len


@settings(max_examples=200, deadline=None)
@given(roundtrip_text)
def test_roundtrip_nfkc_model(eng_model, text):
    assert decode_text(eng_model, encode(eng_model, text).ids) == normalize(text, "NFKC")


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=40))
def test_raw_bytes_roundtrip(eng_model, data):
    assert decode(eng_model, encode_raw(eng_model, data)) == data


def _spans_boundary(model, text):
    ids = encode(model, text).ids
    norm = normalize(text, model.normalization)
    cuts = {s.byte_end for s in split_sentences(norm, model.sentence_delims)}
    ends, pos = set(), 0
    for i in ids:
        pos += len(model.token_bytes(i))
        ends.add(pos)
    return not cuts <= ends


def test_sentence_safety_random_lines(eng_model, hin_model):
    rng = random.Random(7)
    from supertok.fixtures import lines

    pool = lines("eng") + lines("hin")
    for _ in range(200):
        text = "".join(rng.choice(pool) + rng.choice([" ", "", "\n"]) for _ in range(rng.randint(2, 4)))
        for model in (eng_model, hin_model):
            assert not _spans_boundary(model, text)
