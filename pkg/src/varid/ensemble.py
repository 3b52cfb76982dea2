"""Majority-vote ensembles of per-feature linear SVM members.

Every member is a one-vs-rest linear SVM over its own independently fitted
TF-IDF space.  Prediction is hard voting with uniform weights; vote-count
ties go to the smallest label in ascending order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .corpus import Document, LabeledCorpus, LabelSet, build_label_set
from .errors import DataError
from .features import FeatureSpec, fit_tfidf, transform, transform_corpus
from .svm import LinearModel, TrainConfig, predict, train_multiclass


@dataclass(frozen=True)
class MemberSpec:
    """Feature family plus solver settings for one ensemble member."""

    spec: FeatureSpec
    config: TrainConfig


@dataclass(frozen=True)
class EnsembleModel:
    """Ordered SVM members sharing one label set."""

    label_set: LabelSet
    members: tuple[LinearModel, ...]

    def __post_init__(self):
        if not self.members:
            raise DataError("ensemble needs at least one member")
        for member in self.members:
            if member.label_set.labels != self.label_set.labels:
                raise DataError("all members must share the ensemble label set")


def train_ensemble(
    corpus: LabeledCorpus, members: Sequence[MemberSpec]
) -> EnsembleModel:
    """Fit TF-IDF and train a multiclass SVM per member spec, in order."""
    if not members:
        raise DataError("ensemble needs at least one member spec")
    label_set = build_label_set(corpus)
    labels = corpus.labels()
    trained = []
    for member in members:
        tfidf = fit_tfidf(corpus, member.spec)
        X = transform_corpus(tfidf, corpus)
        trained.append(train_multiclass(X, labels, label_set, tfidf, member.config))
    return EnsembleModel(label_set, tuple(trained))


def majority_vote(votes: Sequence[str], label_set: LabelSet) -> str:
    """Label with the most votes; ties break to the ascending-first label."""
    if not votes:
        raise DataError("no votes cast")
    counts = Counter(votes)
    for vote in counts:
        if vote not in label_set:
            raise DataError(f"vote for unknown label: {vote!r}")
    best_label = label_set.labels[0]
    best_count = -1
    for label in label_set.labels:
        count = counts.get(label, 0)
        if count > best_count:
            best_label, best_count = label, count
    return best_label


def predict_ensemble(model: EnsembleModel, doc: Document | str) -> str:
    """One uniform-weight vote per member, then majority rule."""
    votes = [predict(m, transform(m.tfidf, doc)) for m in model.members]
    return majority_vote(votes, model.label_set)


def predict_batch(model: EnsembleModel, docs: Sequence[Document | str]) -> list[str]:
    """Elementwise predict_ensemble, preserving input order."""
    return [predict_ensemble(model, doc) for doc in docs]
