"""TF-IDF-weighted sparse features over character n-grams, word n-grams, and
word skip bigrams.

All feature extraction lowercases first.  Character n-grams run over the raw
lowercased text (spaces and punctuation included, word boundaries crossed);
word-level features see tokens, which are maximal alphanumeric runs of
length >= 2.  Weighting is raw term frequency times smoothed idf,
ln((1 + N) / (1 + df)) + 1, followed by L2 normalization.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .corpus import Document, LabeledCorpus
from .errors import DataError

# Alphanumeric runs of length >= 2 (underscore excluded; \w minus _ matches
# exactly the characters str.isalnum accepts).
_TOKEN_RE = re.compile(r"[^\W_]{2,}", re.UNICODE)

_MAX_ORDER = {"char": 8, "word": 3, "skip": 3}


class FeatureKind(Enum):
    CHAR_NGRAM = "char"
    WORD_NGRAM = "word"
    WORD_SKIP_BIGRAM = "skip"


@dataclass(frozen=True)
class FeatureSpec:
    """One feature family: the n of an n-gram or the k of a k-skip bigram.

    skip_exact only applies to WORD_SKIP_BIGRAM: pairs with exactly k
    intervening tokens instead of the default 0..k.
    """

    kind: FeatureKind
    order: int
    skip_exact: bool = False

    def __post_init__(self):
        limit = _MAX_ORDER[self.kind.value]
        if not 1 <= self.order <= limit:
            raise DataError(
                f"{self.kind.value} order must be in 1..{limit}, got {self.order}"
            )
        if self.skip_exact and self.kind is not FeatureKind.WORD_SKIP_BIGRAM:
            raise DataError("skip_exact only applies to skip bigram specs")

    def __str__(self) -> str:
        prefix = "skipx" if self.skip_exact else self.kind.value
        return f"{prefix}:{self.order}"


def parse_spec(text: str) -> FeatureSpec:
    """Parse the textual form `char:N`, `word:N`, `skip:K`, or `skipx:K`."""
    head, sep, tail = text.strip().partition(":")
    kinds = {
        "char": (FeatureKind.CHAR_NGRAM, False),
        "word": (FeatureKind.WORD_NGRAM, False),
        "skip": (FeatureKind.WORD_SKIP_BIGRAM, False),
        "skipx": (FeatureKind.WORD_SKIP_BIGRAM, True),
    }
    if not sep or head not in kinds:
        raise DataError(f"bad feature spec {text!r} (want e.g. char:4, word:2, skip:1)")
    try:
        order = int(tail)
    except ValueError:
        raise DataError(f"bad feature spec {text!r}: order is not an integer") from None
    kind, exact = kinds[head]
    return FeatureSpec(kind, order, skip_exact=exact)


def parse_spec_list(text: str) -> list[FeatureSpec]:
    """Parse a comma-separated list of feature specs."""
    parts = [p for p in (s.strip() for s in text.split(",")) if p]
    if not parts:
        raise DataError("empty feature spec list")
    return [parse_spec(p) for p in parts]


def tokenize(text: str) -> list[str]:
    """Lowercase, then return maximal alphanumeric runs of length >= 2."""
    return _TOKEN_RE.findall(text.lower())


def char_ngrams(text: str, n: int) -> list[str]:
    """All contiguous length-n substrings of the lowercased text."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lowered = text.lower()
    return [lowered[i : i + n] for i in range(len(lowered) - n + 1)]


def word_ngrams(tokens: list[str], n: int) -> list[str]:
    """Contiguous token windows of length n, joined by single spaces."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def skip_bigrams(tokens: list[str], k: int, exact: bool = False) -> list[str]:
    """Ordered token pairs with up to k (or exactly k) tokens between them."""
    if k < 0:
        raise ValueError("k must be >= 0")
    gaps = (k,) if exact else range(k + 1)
    pairs = []
    for gap in gaps:
        step = gap + 1
        pairs.extend(
            f"{tokens[i]} {tokens[i + step]}" for i in range(len(tokens) - step)
        )
    return pairs


def extract(spec: FeatureSpec, text: str) -> list[str]:
    """Term multiset (as a list) of one document under a feature spec."""
    if spec.kind is FeatureKind.CHAR_NGRAM:
        return char_ngrams(text, spec.order)
    if spec.kind is FeatureKind.WORD_NGRAM:
        return word_ngrams(tokenize(text), spec.order)
    return skip_bigrams(tokenize(text), spec.order, exact=spec.skip_exact)


@dataclass(frozen=True)
class SparseVector:
    """Sorted (index, weight) pairs; no zero weights stored."""

    indices: np.ndarray  # int64, strictly increasing
    values: np.ndarray  # float64

    @classmethod
    def empty(cls) -> "SparseVector":
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def pairs(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(frozen=True)
class Vocabulary:
    """Terms with dense indices plus the document frequencies seen at fit time."""

    terms: tuple[str, ...]
    term_to_index: dict[str, int]
    document_frequency: np.ndarray  # int64, per index
    n_documents: int

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class TfIdfModel:
    """A fitted vocabulary and its smoothed idf weights for one feature spec."""

    spec: FeatureSpec
    vocabulary: Vocabulary
    idf: np.ndarray  # float64, per index


def _iter_texts(corpus) -> Iterable[str]:
    if isinstance(corpus, LabeledCorpus):
        return corpus.texts()
    return corpus


def compute_idf(document_frequency: np.ndarray, n_documents: int) -> np.ndarray:
    """Smoothed idf: ln((1 + N) / (1 + df)) + 1."""
    df = np.asarray(document_frequency, dtype=np.float64)
    return np.log((1.0 + n_documents) / (1.0 + df)) + 1.0


def fit_tfidf(corpus, spec: FeatureSpec) -> TfIdfModel:
    """Fit vocabulary, document frequencies, and idf weights on a corpus.

    Accepts a LabeledCorpus or any iterable of document texts.  Term indices
    are assigned in ascending term order, so fitting is reproducible.
    """
    df_counts: Counter[str] = Counter()
    n_documents = 0
    for text in _iter_texts(corpus):
        n_documents += 1
        df_counts.update(set(extract(spec, text)))
    if n_documents == 0:
        raise DataError("cannot fit on an empty corpus")
    if not df_counts:
        raise DataError(f"empty vocabulary: no {spec} terms in any document")

    terms = tuple(sorted(df_counts))
    term_to_index = {term: i for i, term in enumerate(terms)}
    df = np.fromiter((df_counts[t] for t in terms), dtype=np.int64, count=len(terms))
    vocabulary = Vocabulary(terms, term_to_index, df, n_documents)
    return TfIdfModel(spec, vocabulary, compute_idf(df, n_documents))


def transform(model: TfIdfModel, doc: Document | str) -> SparseVector:
    """Map one document to its L2-normalized tf-idf vector.

    Out-of-vocabulary terms are ignored; a document with no in-vocabulary
    terms maps to the empty vector.
    """
    text = doc.text if isinstance(doc, Document) else doc
    counts = Counter(extract(model.spec, text))
    term_to_index = model.vocabulary.term_to_index
    pairs = sorted(
        (term_to_index[term], tf) for term, tf in counts.items() if term in term_to_index
    )
    if not pairs:
        return SparseVector.empty()
    indices = np.fromiter((i for i, _ in pairs), dtype=np.int64, count=len(pairs))
    tf = np.fromiter((c for _, c in pairs), dtype=np.float64, count=len(pairs))
    weights = tf * model.idf[indices]
    weights /= np.linalg.norm(weights)
    return SparseVector(indices, weights)


def transform_corpus(model: TfIdfModel, corpus) -> list[SparseVector]:
    """Transform every document of a corpus (or iterable of texts) in order."""
    return [transform(model, text) for text in _iter_texts(corpus)]
