"""L2-regularized squared-hinge linear SVMs trained by dual coordinate descent.

The binary solver minimizes

    (1/2) ||w||^2 + C * sum_i max(0, 1 - y_i w.x_i)^2

through its dual: one projected Newton step per dual variable, with diagonal
term D_ii = 1/(2C) and no upper bound on the alphas.  Instances are visited
in a fresh seeded random permutation each epoch, so training is bitwise
reproducible for a given seed.

Multiclass is one-vs-rest, except that two labels train a single separator
whose positive side is the second label in ascending order.  A constant bias
feature of value 1.0 is appended after L2 normalization and regularized like
any other weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from numba import njit

from .corpus import LabelSet
from .errors import DataError, InternalError
from .features import SparseVector, TfIdfModel

# Updates with a projected gradient at or below this are skipped: they no
# longer change the objective at float64 resolution.
_UPDATE_GUARD = 1e-12


@dataclass(frozen=True)
class TrainConfig:
    """Solver settings for one binary subproblem."""

    C: float = 1.0
    tolerance: float = 1e-4
    max_epochs: int = 1000
    seed: int = 42

    def __post_init__(self):
        if not self.C > 0:
            raise DataError(f"C must be positive, got {self.C}")
        if not self.tolerance > 0:
            raise DataError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_epochs < 1:
            raise DataError(f"max_epochs must be >= 1, got {self.max_epochs}")


@dataclass(frozen=True)
class LinearModel:
    """One-vs-rest weight vectors over a TfIdfModel's feature space.

    weights has shape (n_separators, vocabulary size + 1); the last column is
    the bias weight.  Two labels share a single separator (n_separators = 1)
    whose positive score means the second label in ascending order.
    """

    label_set: LabelSet
    weights: np.ndarray
    tfidf: TfIdfModel
    config: TrainConfig

    def __post_init__(self):
        expected = 1 if len(self.label_set) == 2 else len(self.label_set)
        if self.weights.shape != (expected, len(self.tfidf.vocabulary) + 1):
            raise InternalError(
                f"weight array shape {self.weights.shape} does not match "
                f"{expected} separators over {len(self.tfidf.vocabulary) + 1} features"
            )
        if not np.all(np.isfinite(self.weights)):
            raise InternalError("non-finite weights")


def _to_csr(X: Sequence[SparseVector], n_features: int, bias: bool):
    """Concatenate sparse vectors into CSR arrays, optionally appending a
    constant 1.0 bias feature at index n_features."""
    nnz_per_row = np.fromiter((len(x) for x in X), dtype=np.int64, count=len(X))
    if bias:
        nnz_per_row = nnz_per_row + 1
    indptr = np.zeros(len(X) + 1, dtype=np.int64)
    np.cumsum(nnz_per_row, out=indptr[1:])
    indices = np.empty(indptr[-1], dtype=np.int64)
    data = np.empty(indptr[-1], dtype=np.float64)
    for row, x in enumerate(X):
        start, end = indptr[row], indptr[row + 1]
        if bias:
            indices[start : end - 1] = x.indices
            data[start : end - 1] = x.values
            indices[end - 1] = n_features
            data[end - 1] = 1.0
        else:
            indices[start:end] = x.indices
            data[start:end] = x.values
    return data, indices, indptr


@njit(cache=True)
def _epoch_pass(data, indices, indptr, y, alpha, w, qdiag, dii, guard, order):
    """One sweep of projected Newton updates in the given visit order.

    Mutates alpha and w in place; returns the largest projected-gradient
    violation seen during the sweep.
    """
    max_violation = 0.0
    for t in range(order.shape[0]):
        i = order[t]
        start, end = indptr[i], indptr[i + 1]
        dot = 0.0
        for p in range(start, end):
            dot += w[indices[p]] * data[p]
        grad = y[i] * dot - 1.0 + dii * alpha[i]
        if alpha[i] > 0.0:
            projected = grad
        else:
            projected = grad if grad < 0.0 else 0.0
        violation = -projected if projected < 0.0 else projected
        if violation > guard:
            new_a = alpha[i] - grad / qdiag[i]
            if new_a < 0.0:
                new_a = 0.0
            delta = (new_a - alpha[i]) * y[i]
            alpha[i] = new_a
            for p in range(start, end):
                w[indices[p]] += delta * data[p]
        if violation > max_violation:
            max_violation = violation
    return max_violation


@njit(cache=True)
def _violation_pass(data, indices, indptr, y, alpha, w, dii):
    """Largest projected-gradient violation at a fixed dual point."""
    max_violation = 0.0
    for i in range(alpha.shape[0]):
        dot = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            dot += w[indices[p]] * data[p]
        grad = y[i] * dot - 1.0 + dii * alpha[i]
        if alpha[i] > 0.0:
            projected = grad
        else:
            projected = grad if grad < 0.0 else 0.0
        violation = -projected if projected < 0.0 else projected
        if violation > max_violation:
            max_violation = violation
    return max_violation


def dual_objective(w: np.ndarray, alpha: np.ndarray, C: float) -> float:
    """Dual objective (maximization form) at a dual point, compensated sum."""
    dii = 1.0 / (2.0 * C)
    terms = alpha.tolist()
    terms.extend(-0.5 * v * v for v in w.tolist())
    terms.extend(-0.5 * dii * a * a for a in alpha.tolist())
    return math.fsum(terms)


class EpochTrace(NamedTuple):
    """Dual state recorded after one epoch of updates."""

    dual_objective: float
    alpha: np.ndarray


def dual_coordinate_descent(
    data: np.ndarray,
    indices: np.ndarray,
    indptr: np.ndarray,
    y: np.ndarray,
    n_features: int,
    config: TrainConfig,
    track_dual: bool = False,
):
    """Solve one binary subproblem over CSR-form inputs.

    Returns (w, alpha, epochs_run, history).  history holds an EpochTrace
    per epoch when track_dual is set.
    """
    n = len(y)
    w = np.zeros(n_features, dtype=np.float64)
    alpha = np.zeros(n, dtype=np.float64)
    dii = 1.0 / (2.0 * config.C)

    qdiag = np.empty(n, dtype=np.float64)
    for i in range(n):
        vals = data[indptr[i] : indptr[i + 1]]
        qdiag[i] = vals @ vals + dii

    history: list[EpochTrace] = []
    rng = np.random.default_rng(config.seed)
    guard = min(_UPDATE_GUARD, 0.5 * config.tolerance)
    epochs_run = 0
    for _ in range(config.max_epochs):
        epochs_run += 1
        order = rng.permutation(n)
        max_violation = _epoch_pass(
            data, indices, indptr, y, alpha, w, qdiag, dii, guard, order
        )
        if track_dual:
            history.append(
                EpochTrace(dual_objective(w, alpha, config.C), alpha.copy())
            )
        if max_violation < config.tolerance:
            # confirm at the frozen state: the sweep maximum is measured
            # while w still moves, so it can understate the final violation
            settled = _violation_pass(data, indices, indptr, y, alpha, w, dii)
            if settled < config.tolerance:
                break
    return w, alpha, epochs_run, history


def _validate_rows(X: Sequence[SparseVector]):
    for x in X:
        if len(x) and not np.all(np.isfinite(x.values)):
            raise DataError("non-finite feature weight in training data")


def train_binary(
    X: Sequence[SparseVector],
    y: Sequence[int],
    config: TrainConfig,
    n_features: int | None = None,
) -> np.ndarray:
    """Train one binary separator; y entries must be +1 or -1, both present.

    Vectors are used as given (no bias is appended here); n_features defaults
    to one past the largest index seen.  Results are bitwise reproducible for
    a fixed seed; reordering the training instances changes the permutation
    domain and may change the exact weights, though not solution quality.
    """
    y_arr = np.asarray(y, dtype=np.float64)
    if len(X) != len(y_arr) or len(X) < 2:
        raise DataError("need equal-length X and y with at least 2 instances")
    if not (np.any(y_arr == 1.0) and np.any(y_arr == -1.0)):
        raise DataError("training data must contain both classes")
    if not np.all(np.isin(y_arr, (-1.0, 1.0))):
        raise DataError("labels must be +1 or -1")
    _validate_rows(X)
    if n_features is None:
        n_features = 1 + max((int(x.indices[-1]) for x in X if len(x)), default=-1)
    data, indices, indptr = _to_csr(X, n_features, bias=False)
    w, _, _, _ = dual_coordinate_descent(data, indices, indptr, y_arr, n_features, config)
    return w


def train_multiclass(
    X: Sequence[SparseVector],
    labels: Sequence[str],
    label_set: LabelSet,
    tfidf: TfIdfModel,
    config: TrainConfig,
) -> LinearModel:
    """Train the one-vs-rest (or single binary) model for a label set."""
    if len(X) != len(labels):
        raise DataError("need one label per training vector")
    _validate_rows(X)
    label_idx = np.fromiter(
        (label_set.index_of(label) for label in labels), dtype=np.int64, count=len(labels)
    )
    n_features = len(tfidf.vocabulary)
    data, indices, indptr = _to_csr(X, n_features, bias=True)
    dim = n_features + 1

    k = len(label_set)
    positive_classes = [1] if k == 2 else list(range(k))
    weights = np.empty((len(positive_classes), dim), dtype=np.float64)
    for row, cls in enumerate(positive_classes):
        y = np.where(label_idx == cls, 1.0, -1.0)
        if not (np.any(y == 1.0) and np.any(y == -1.0)):
            raise DataError(
                f"class {label_set.labels[cls]!r} is missing or covers all instances"
            )
        weights[row], _, _, _ = dual_coordinate_descent(
            data, indices, indptr, y, dim, config
        )
    return LinearModel(label_set, weights, tfidf, config)


def decision_scores(model: LinearModel, x: SparseVector) -> np.ndarray:
    """Per-class scores w_k . [x; 1]; two-label models return (-s, +s)."""
    n_features = len(model.tfidf.vocabulary)
    if len(x) and (int(x.indices[-1]) >= n_features or int(x.indices[0]) < 0):
        raise InternalError(
            f"feature index out of range for vocabulary of size {n_features}"
        )
    raw = model.weights[:, x.indices] @ x.values + model.weights[:, -1]
    if len(model.label_set) == 2:
        s = raw[0]
        return np.array([-s, s])
    return raw


def predict(model: LinearModel, x: SparseVector) -> str:
    """Label with the maximal score; exact ties go to the ascending-first label."""
    scores = decision_scores(model, x)
    return model.label_set.labels[int(np.argmax(scores))]
