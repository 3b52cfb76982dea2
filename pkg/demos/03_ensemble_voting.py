"""
Ensembles and majority voting
=============================

Trains a three-member ensemble on a synthetic five-way dialect task and
dissects the votes, including the ascending-label tie-break.
"""

import numpy as np

from varid import (
    Document,
    FeatureKind,
    FeatureSpec,
    LabeledCorpus,
    MemberSpec,
    TrainConfig,
    majority_vote,
    predict,
    predict_ensemble,
    train_ensemble,
    transform,
)
from varid.corpus import LabelSet

# Five "dialects", each writing words over its own letters: class k draws
# from alphabet[k], so character n-grams separate the classes cleanly.
ALPHABETS = ("abcd", "efgh", "ijkl", "mnop", "qrst")
LABELS = ("EGY", "GLF", "LEV", "MSA", "NOR")
rng = np.random.default_rng(7)


def make_doc(k):
    words = []
    for _ in range(int(rng.integers(3, 8))):
        length = int(rng.integers(3, 7))
        words.append("".join(ALPHABETS[k][int(rng.integers(4))] for _ in range(length)))
    return Document(" ".join(words))


entries = tuple(
    (make_doc(k), LABELS[k]) for k in rng.integers(5, size=300)
)
corpus = LabeledCorpus(entries)

config = TrainConfig(C=1.0, seed=42)
members = [
    MemberSpec(FeatureSpec(FeatureKind.CHAR_NGRAM, n), config) for n in (3, 4, 5)
]
model = train_ensemble(corpus, members)
print(f"trained {len(model.members)} members over labels {model.label_set.labels}")

# Each member casts one hard vote; the ensemble returns the majority label.
doc = make_doc(2)  # a LEV document
votes = [predict(m, transform(m.tfidf, doc)) for m in model.members]
print(f"\ndocument: {doc.text!r}")
print("member votes:", votes)
print("ensemble says:", predict_ensemble(model, doc))

# The vote combiner itself is a pure function.  With no majority, the
# smallest label in ascending order wins:
label_set = LabelSet(LABELS)
print("\nvotes [EGY, EGY, MSA]      ->", majority_vote(["EGY", "EGY", "MSA"], label_set))
print("votes [NOR, LEV, NOR, LEV, EGY] ->",
      majority_vote(["NOR", "LEV", "NOR", "LEV", "EGY"], label_set),
      "(LEV/NOR tie, LEV first ascending)")

# Accuracy on fresh documents:
fresh = [(make_doc(k), LABELS[k]) for k in rng.integers(5, size=100)]
correct = sum(predict_ensemble(model, d) == gold for d, gold in fresh)
print(f"\naccuracy on 100 fresh documents: {correct}/100")
