"""
Corpora and TF-IDF n-gram features
==================================

Loads a tiny Dutch/Flemish-style TSV corpus, walks through the three
feature families, and inspects the fitted TF-IDF weights.
"""

import tempfile
from pathlib import Path

from varid import (
    FeatureKind,
    FeatureSpec,
    build_label_set,
    char_ngrams,
    fit_tfidf,
    load_corpus,
    skip_bigrams,
    tokenize,
    transform,
    word_ngrams,
)

# A dataset is one instance per line: text, a tab, the label.
tsv = (
    "ik zie de zon schijnen\tBEL\n"
    "de trein naar amsterdam vertrekt\tDUT\n"
    "wij gaan samen naar zee\tBEL\n"
    "het weer wordt morgen beter\tDUT\n"
)
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "toy.tsv"
    path.write_text(tsv, encoding="utf-8")
    corpus = load_corpus(path)

print(f"{len(corpus)} documents, labels in file order: {corpus.labels()}")

# The label set is always kept in ascending order; every tie-break in the
# toolkit (argmax, voting, grid search) refers back to this order.
label_set = build_label_set(corpus)
print("ascending label set:", label_set.labels)

# Word-level features see lowercased alphanumeric runs of length >= 2.
text = corpus.entries[0][0].text
print("\ntext:      ", text)
print("tokens:    ", tokenize(text))
print("word 2-grams:", word_ngrams(tokenize(text), 2))

# Skip bigrams pair tokens across gaps of 0..k intervening tokens.
print("1-skip bigrams:", skip_bigrams(tokenize(text), 1))

# Character n-grams run over the raw lowercased text, spaces included,
# crossing word boundaries.
print("char 3-grams:", char_ngrams(text, 3)[:8], "...")

# Fitting assigns indices in term order and computes smoothed idf:
# ln((1 + N) / (1 + df)) + 1.
model = fit_tfidf(corpus, FeatureSpec(FeatureKind.WORD_NGRAM, 1))
vocab = model.vocabulary
print(f"\nword-unigram vocabulary: {len(vocab)} terms over {vocab.n_documents} docs")
for term in ("de", "naar", "zon"):
    i = vocab.term_to_index[term]
    print(f"  df({term}) = {vocab.document_frequency[i]}, idf = {model.idf[i]:.6f}")

# Transformed vectors are L2-normalized; unseen terms are ignored.
vec = transform(model, "de zon en nog eens de zon")
print("\ntransform('de zon en nog eens de zon'):")
for index, weight in vec.pairs:
    print(f"  {vocab.terms[index]!r}: {weight:.6f}")
print("norm:", vec.norm())
