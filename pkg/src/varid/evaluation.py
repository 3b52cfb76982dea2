"""Macro-F1, per-class precision/recall, confusion matrices, and report files.

Zero-division convention: any 0/0 in precision, recall, or F1 yields 0, and
the macro average runs over every label in the label set, including classes
absent from the evaluated split.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import LabelSet
from .errors import DataError


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[i][j] = instances with true label i predicted as label j."""

    label_set: LabelSet
    counts: np.ndarray  # int64, |labels| x |labels|


@dataclass(frozen=True)
class ScoreReport:
    """Per-class precision/recall/F1 plus their macro mean and accuracy."""

    label_set: LabelSet
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    macro_f1: float
    accuracy: float


def confusion(
    gold: Sequence[str], pred: Sequence[str], label_set: LabelSet
) -> ConfusionMatrix:
    """Count (true, predicted) label pairs."""
    if len(gold) != len(pred):
        raise DataError(f"length mismatch: {len(gold)} gold vs {len(pred)} predicted")
    if not gold:
        raise DataError("nothing to evaluate")
    k = len(label_set)
    counts = np.zeros((k, k), dtype=np.int64)
    for g, p in zip(gold, pred):
        counts[label_set.index_of(g), label_set.index_of(p)] += 1
    return ConfusionMatrix(label_set, counts)


def _safe_divide(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros_like(num, dtype=np.float64)
    np.divide(num, den, out=out, where=den != 0)
    return out


def per_class_scores(matrix: ConfusionMatrix):
    """(precision, recall, f1) arrays over all classes, 0/0 mapped to 0."""
    counts = matrix.counts.astype(np.float64)
    diag = np.diag(counts)
    precision = _safe_divide(diag, counts.sum(axis=0))
    recall = _safe_divide(diag, counts.sum(axis=1))
    f1 = _safe_divide(2.0 * precision * recall, precision + recall)
    return precision, recall, f1


def macro_f1(matrix: ConfusionMatrix) -> float:
    """Unweighted mean of per-class F1 over the full label set."""
    _, _, f1 = per_class_scores(matrix)
    return float(f1.mean())


def report(
    gold: Sequence[str], pred: Sequence[str], label_set: LabelSet
) -> tuple[ScoreReport, ConfusionMatrix]:
    """Full evaluation: per-class scores, macro-F1, accuracy, confusion matrix."""
    matrix = confusion(gold, pred, label_set)
    precision, recall, f1 = per_class_scores(matrix)
    accuracy = float(np.trace(matrix.counts) / matrix.counts.sum())
    score = ScoreReport(
        label_set, precision, recall, f1, float(f1.mean()), accuracy
    )
    return score, matrix


def write_report(report_dir, score: ScoreReport, matrix: ConfusionMatrix) -> None:
    """Emit scores.tsv, confusion.csv, and confusion_normalized.csv.

    confusion_normalized.csv is row-normalized to 6 decimal places; rows with
    no instances stay all-zero.
    """
    out = Path(report_dir)
    out.mkdir(parents=True, exist_ok=True)
    labels = score.label_set.labels

    with open(out / "scores.tsv", "w", encoding="utf-8", newline="") as fh:
        fh.write("label\tprecision\trecall\tf1\n")
        for i, label in enumerate(labels):
            p, r, f = (float(a[i]) for a in (score.precision, score.recall, score.f1))
            fh.write(f"{label}\t{p!r}\t{r!r}\t{f!r}\n")
        fh.write(f"macro_f1\t{score.macro_f1!r}\n")
        fh.write(f"accuracy\t{score.accuracy!r}\n")

    with open(out / "confusion.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([""] + list(labels))
        for i, label in enumerate(labels):
            writer.writerow([label] + matrix.counts[i].tolist())

    row_sums = matrix.counts.sum(axis=1, keepdims=True).astype(np.float64)
    normalized = _safe_divide(matrix.counts.astype(np.float64), row_sums)
    with open(out / "confusion_normalized.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([""] + list(labels))
        for i, label in enumerate(labels):
            writer.writerow([label] + [f"{v:.6f}" for v in normalized[i]])
