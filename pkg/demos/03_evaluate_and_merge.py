"""Compare monolingual, merged and unified tokenizers on four languages.

Two monolingual models are stacked with ``merge_tokenizers``; a third model
is trained on the concatenated bilingual corpus with the same budgets. The
report is the same markdown the ``supertok eval`` command writes.
"""

from supertok import TrainerConfig, evaluate, load_corpus, merge_tokenizers, render_report, train
from supertok.evaluation import CorpusManifest
from supertok.fixtures import bilingual, bilingual_lines, lines, manifest_entries
from supertok.vocab_ops import corpus_script_shares, script_distribution

n_eng = len(lines("eng"))
texts = bilingual_lines()

# 400 learned tokens in total, 66 of them superwords, split evenly.
eng = train(TrainerConfig(vocab_size=456, transition_point=423), "\n".join(texts[:n_eng]))
hin = train(TrainerConfig(vocab_size=456, transition_point=423), "\n".join(texts[n_eng:]))
unified = train(TrainerConfig(vocab_size=656, transition_point=590), bilingual())
merged = merge_tokenizers([eng, hin], [200, 200])

corpus = load_corpus(CorpusManifest.from_list(manifest_entries()))
report = evaluate({"eng": eng, "hin": hin, "merged": merged, "unified": unified}, corpus, base="unified")
print(render_report(report, "markdown"))

print("vocabulary share vs corpus byte share (unified model):")
shares = corpus_script_shares(texts)
for script, count, pct in script_distribution(unified):
    print(f"  {script:11s} {pct:5.1f}%  corpus {shares.get(script, 0.0):5.1f}%")
