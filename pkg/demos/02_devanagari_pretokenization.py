"""Why pre-tokenization matters for Devanagari.

GPT-2 style rules group letters only. Vowel signs and the virama are
combining marks, so they split a Hindi word into fragments that BPE can
never merge back together. The script-agnostic rules keep marks with
their letters.
"""

from supertok import TrainerConfig, train
from supertok.codec import encode
from supertok.fixtures import lines, load
from supertok.metrics import LineStats, count_words, fertility
from supertok.pretokenization import split_pretokens

word = "नमस्ते"
print("gpt2:           ", split_pretokens(word, "gpt2"))
print("script_agnostic:", split_pretokens(word, "script_agnostic"))

corpus = load("hin")
held_in = lines("hin")
for pattern in ("gpt2", "script_agnostic"):
    model = train(TrainerConfig(vocab_size=456, pattern=pattern), corpus)
    stats = [LineStats(len(encode(model, l)), count_words(l), 0) for l in held_in]
    print(f"{pattern:16s} fertility {fertility(stats):.3f}")
