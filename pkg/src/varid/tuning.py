"""Grid search over C and member combinations, plus the per-feature sweep.

Selection is by macro-F1 on a development split.  Candidates are evaluated
in deterministic order (ascending C, then combination order); the first
candidate attaining the best score wins, so equal scores break toward the
smaller C.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .corpus import LabeledCorpus
from .ensemble import MemberSpec, predict_batch, train_ensemble
from .errors import DataError
from .evaluation import confusion, macro_f1
from .features import FeatureKind, FeatureSpec
from .svm import TrainConfig

DEFAULT_C_VALUES = (1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0)

# Shipped winning combinations: char 3..5 grams (five-way Arabic dialect
# preset) and char 3..6 grams plus word trigrams (Dutch/Flemish preset).
ADI_COMBINATION = tuple(FeatureSpec(FeatureKind.CHAR_NGRAM, n) for n in (3, 4, 5))
DFS_COMBINATION = tuple(FeatureSpec(FeatureKind.CHAR_NGRAM, n) for n in (3, 4, 5, 6)) + (
    FeatureSpec(FeatureKind.WORD_NGRAM, 3),
)


def single_spec_menu() -> list[FeatureSpec]:
    """Every individual feature family: char 1..8, word 1..3, skip 1..3."""
    menu = [FeatureSpec(FeatureKind.CHAR_NGRAM, n) for n in range(1, 9)]
    menu += [FeatureSpec(FeatureKind.WORD_NGRAM, n) for n in range(1, 4)]
    menu += [FeatureSpec(FeatureKind.WORD_SKIP_BIGRAM, k) for k in range(1, 4)]
    return menu


def default_combinations() -> list[tuple[FeatureSpec, ...]]:
    """All single specs plus the two shipped winning combinations."""
    return [(spec,) for spec in single_spec_menu()] + [
        ADI_COMBINATION,
        DFS_COMBINATION,
    ]


@dataclass(frozen=True)
class GridSpec:
    """Candidate C values (strictly increasing) and member combinations."""

    c_values: tuple[float, ...] = DEFAULT_C_VALUES
    combinations: tuple[tuple[FeatureSpec, ...], ...] = ()

    def __post_init__(self):
        if not self.c_values:
            raise DataError("grid needs at least one C value")
        if any(c <= 0 for c in self.c_values):
            raise DataError("C values must be positive")
        if any(a >= b for a, b in zip(self.c_values, self.c_values[1:])):
            raise DataError("C values must be strictly increasing")
        if not self.combinations:
            object.__setattr__(self, "combinations", tuple(default_combinations()))
        if any(not combo for combo in self.combinations):
            raise DataError("every combination must name at least one feature spec")


@dataclass(frozen=True)
class SearchResult:
    """Winning candidate plus the full (C, combination, dev macro-F1) trace."""

    best_c: float
    best_combination: tuple[FeatureSpec, ...]
    best_dev_f1: float
    trace: tuple[tuple[float, tuple[FeatureSpec, ...], float], ...]


def _check_dev_labels(train: LabeledCorpus, dev: LabeledCorpus):
    train_labels = set(train.labels())
    unknown = sorted(set(dev.labels()) - train_labels)
    if unknown:
        raise DataError(f"unknown dev label: {unknown[0]!r} does not occur in train")


def _dev_macro_f1(train: LabeledCorpus, dev: LabeledCorpus, members):
    model = train_ensemble(train, members)
    pred = predict_batch(model, [doc for doc, _ in dev.entries])
    return macro_f1(confusion(dev.labels(), pred, model.label_set))


def sweep_members(
    train: LabeledCorpus,
    dev: LabeledCorpus,
    specs: Sequence[FeatureSpec],
    config: TrainConfig,
) -> list[tuple[FeatureSpec, float]]:
    """Dev macro-F1 of a single-member model per feature spec, in input order."""
    if not specs:
        raise DataError("no feature specs to sweep")
    _check_dev_labels(train, dev)
    return [
        (spec, _dev_macro_f1(train, dev, [MemberSpec(spec, config)]))
        for spec in specs
    ]


def grid_search(
    train: LabeledCorpus,
    dev: LabeledCorpus,
    grid: GridSpec,
    base_config: TrainConfig = TrainConfig(),
) -> SearchResult:
    """Evaluate every (C, combination) candidate and return the winner.

    base_config supplies tolerance, epoch cap, and seed; its C is replaced by
    each grid value.
    """
    _check_dev_labels(train, dev)
    trace = []
    best = None
    for c in grid.c_values:
        config = replace(base_config, C=c)
        for combo in grid.combinations:
            members = [MemberSpec(spec, config) for spec in combo]
            f1 = _dev_macro_f1(train, dev, members)
            trace.append((c, combo, f1))
            if best is None or f1 > best[2]:
                best = (c, combo, f1)
    return SearchResult(best[0], best[1], best[2], tuple(trace))


def format_combination(combo: Sequence[FeatureSpec]) -> str:
    return ",".join(str(spec) for spec in combo)


def trace_lines(result: SearchResult) -> list[str]:
    """Trace rows as `C<TAB>combination<TAB>dev_macro_f1` strings."""
    return [
        f"{c!r}\t{format_combination(combo)}\t{f1!r}"
        for c, combo, f1 in result.trace
    ]
