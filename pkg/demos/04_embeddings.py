"""Seed embeddings for a new vocabulary, then look for undertrained tokens.

``retok_init`` copies rows for tokens both vocabularies share and averages
the old-tokenizer decomposition for new ones. ``glitch_scan`` ranks tokens
by cosine distance to the mean embedding of dummy tokens, which never occur
in training data.
"""

import numpy as np

from supertok import EmbeddingMatrix, TrainerConfig, glitch_scan, retok_init, train
from supertok.embeddings import classify_scan, default_scan_exclusions
from supertok.fixtures import bilingual, load

rng = np.random.default_rng(0)
old = train(TrainerConfig(vocab_size=456, transition_point=0.9), load("eng"))
new = train(TrainerConfig(vocab_size=460, transition_point=0.9, reserved_dummy_tokens=4), bilingual())

old_emb = EmbeddingMatrix.for_model(old, rng.standard_normal((old.vocab_size, 32)))
new_emb = retok_init(old, old_emb, new)
shared = sum(tok in old.bytes_to_id() for tok in new.vocab)
print(f"{shared} of {new.vocab_size} rows copied, the rest averaged")

# Pretend the dummy rows drifted towards a common direction during training.
values = new_emb.values.copy()
drift = rng.standard_normal(32)
for i in new.dummy_token_ids:
    values[i] = drift + 0.1 * rng.standard_normal(32)
# and that a handful of rare tokens were never updated either
rare = list(new.learned_token_ids)[-5:]
for i in rare:
    values[i] = drift + 0.3 * rng.standard_normal(32)
emb = EmbeddingMatrix(values, new_emb.fingerprint)

scan = glitch_scan(emb, new.dummy_token_ids, 10, exclude_ids=default_scan_exclusions(new))
for tid, dist in scan:
    flag = "*" if tid in rare else " "
    print(f"{flag} {tid:4d} {dist:.4f} {new.token_text(tid)!r}")
print(classify_scan(new, scan, high_id_threshold=400))
