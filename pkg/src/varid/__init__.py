"""Language variety and dialect identification toolkit.

TF-IDF-weighted character/word n-gram and skip-gram features feed an
ensemble of one-vs-rest linear SVMs (dual coordinate descent, squared hinge)
combined by majority vote with a deterministic ascending-label tie-break.
"""

from .corpus import (
    Document,
    LabeledCorpus,
    LabelSet,
    build_label_set,
    load_corpus,
)
from .ensemble import (
    EnsembleModel,
    MemberSpec,
    majority_vote,
    predict_batch,
    predict_ensemble,
    train_ensemble,
)
from .errors import DataError, InternalError, ModelFormatError
from .evaluation import (
    ConfusionMatrix,
    ScoreReport,
    confusion,
    macro_f1,
    report,
    write_report,
)
from .features import (
    FeatureKind,
    FeatureSpec,
    SparseVector,
    TfIdfModel,
    Vocabulary,
    char_ngrams,
    fit_tfidf,
    parse_spec,
    parse_spec_list,
    skip_bigrams,
    tokenize,
    transform,
    transform_corpus,
    word_ngrams,
)
from .model_io import load, save
from .svm import (
    LinearModel,
    TrainConfig,
    decision_scores,
    predict,
    train_binary,
    train_multiclass,
)
from .tuning import (
    GridSpec,
    SearchResult,
    grid_search,
    sweep_members,
)

__version__ = "0.1.0"

__all__ = [
    "ConfusionMatrix",
    "DataError",
    "Document",
    "EnsembleModel",
    "FeatureKind",
    "FeatureSpec",
    "GridSpec",
    "InternalError",
    "LabeledCorpus",
    "LabelSet",
    "LinearModel",
    "MemberSpec",
    "ModelFormatError",
    "ScoreReport",
    "SearchResult",
    "SparseVector",
    "TfIdfModel",
    "TrainConfig",
    "Vocabulary",
    "build_label_set",
    "char_ngrams",
    "confusion",
    "decision_scores",
    "fit_tfidf",
    "grid_search",
    "load",
    "load_corpus",
    "macro_f1",
    "majority_vote",
    "parse_spec",
    "parse_spec_list",
    "predict",
    "predict_batch",
    "predict_ensemble",
    "report",
    "save",
    "skip_bigrams",
    "sweep_members",
    "tokenize",
    "train_binary",
    "train_ensemble",
    "train_multiclass",
    "transform",
    "transform_corpus",
    "word_ngrams",
    "write_report",
]
