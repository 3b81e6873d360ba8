"""Train a two-stage tokenizer on the English fixture and look at what it learned.

The first 90% of the vocabulary is ordinary subword BPE. The remaining
tokens are learned across word boundaries, so frequent phrases such as
" in the morning" become single tokens.
"""

from supertok import Stage, TrainerConfig, decode, encode, token_pieces, train
from supertok.fixtures import load

corpus = load("eng")

two_stage = train(TrainerConfig(vocab_size=456, transition_point=0.9), corpus)
subword_only = train(TrainerConfig(vocab_size=456), corpus)

superwords = [two_stage.token_text(r.result) for r in two_stage.merges if r.stage is Stage.SUPERWORD]
print(f"{len(superwords)} superword tokens, for example:")
for text in superwords[:12]:
    print(f"  {text!r}")

sentence = "My friends drink a cup of tea in the morning. Is this the end of the road?"
for name, model in (("two-stage", two_stage), ("subword only", subword_only)):
    ids = encode(model, sentence).ids
    print(f"\n{name}: {len(ids)} tokens")
    print("  " + " | ".join(token_pieces(model, ids)))
    assert decode(model, ids) == sentence.encode()

# Merges never cross a sentence delimiter, so "morning." and " Is" stay apart
# even though both sentences sit on one line.
