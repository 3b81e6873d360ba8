"""Sweep the transition point and the normalization form.

Each sweep point trains one model on the English and Hindi fixtures and
reports fertility per language. The 100% row is a plain subword model.
"""

from supertok import TrainerConfig
from supertok.ablation import SweepSpec, run_ablation
from supertok.evaluation import Corpus
from supertok.fixtures import lines

train_lines = lines("eng") + lines("hin")
held_in = Corpus.from_texts({"eng": "\n".join(lines("eng")), "hi": "\n".join(lines("hin"))})
base = TrainerConfig(vocab_size=656, transition_point=0.9)

for axis, values in (("transition", [0.6, 0.75, 0.9, 1.0]), ("normalization", ["NFC", "NFD", "NFKC"])):
    table = run_ablation(train_lines, held_in, SweepSpec(axis, values, base), jobs=2)
    print(table.render("markdown"))
