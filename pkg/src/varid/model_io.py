"""Lossless save/load of ensemble models as canonical JSON text.

Every float is serialized as its shortest round-trip decimal, so predictions
of a loaded model are bitwise identical to the in-memory model, and
save -> load -> save reproduces the file byte for byte.  Files are written
atomically (temp file, then rename).
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

import numpy as np

from .corpus import LabelSet, label_sort_key
from .ensemble import EnsembleModel
from .errors import ModelFormatError
from .features import TfIdfModel, Vocabulary, parse_spec
from .svm import LinearModel, TrainConfig

FORMAT_VERSION = 1


def _member_payload(member: LinearModel) -> dict:
    vocab = member.tfidf.vocabulary
    return {
        "feature_spec": str(member.tfidf.spec),
        "train_config": {
            "C": member.config.C,
            "tolerance": member.config.tolerance,
            "max_epochs": member.config.max_epochs,
            "seed": member.config.seed,
        },
        "n_documents": vocab.n_documents,
        "terms": list(vocab.terms),
        "document_frequency": vocab.document_frequency.tolist(),
        "idf": member.tfidf.idf.tolist(),
        "weights": member.weights.tolist(),
    }


def save(model: EnsembleModel, path) -> None:
    """Write the model file; any existing file at path is replaced."""
    payload = {
        "format_version": FORMAT_VERSION,
        "labels": list(model.label_set.labels),
        "members": [_member_payload(m) for m in model.members],
    }
    text = json.dumps(payload, ensure_ascii=False, allow_nan=False, indent=1)
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
        fh.write("\n")
    os.replace(tmp, path)


def _require(condition: bool, message: str):
    if not condition:
        raise ModelFormatError(message)


def _load_member(payload: dict, label_set: LabelSet, position: int) -> LinearModel:
    where = f"member {position}"
    _require(isinstance(payload, dict), f"{where}: not an object")
    for key in (
        "feature_spec",
        "train_config",
        "n_documents",
        "terms",
        "document_frequency",
        "idf",
        "weights",
    ):
        _require(key in payload, f"{where}: missing field {key!r}")

    spec = parse_spec(payload["feature_spec"])
    cfg = payload["train_config"]
    _require(
        isinstance(cfg, dict) and set(cfg) >= {"C", "tolerance", "max_epochs", "seed"},
        f"{where}: malformed train_config",
    )
    config = TrainConfig(
        C=float(cfg["C"]),
        tolerance=float(cfg["tolerance"]),
        max_epochs=int(cfg["max_epochs"]),
        seed=int(cfg["seed"]),
    )

    terms = payload["terms"]
    _require(
        isinstance(terms, list) and all(isinstance(t, str) for t in terms),
        f"{where}: terms must be a list of strings",
    )
    _require(len(set(terms)) == len(terms), f"{where}: duplicate terms")
    _require(len(terms) > 0, f"{where}: empty vocabulary")

    n_documents = payload["n_documents"]
    _require(
        isinstance(n_documents, int) and n_documents >= 1,
        f"{where}: n_documents must be a positive integer",
    )
    df_list = payload["document_frequency"]
    _require(
        isinstance(df_list, list) and len(df_list) == len(terms),
        f"{where}: document_frequency length must match terms",
    )
    _require(
        all(isinstance(d, int) and 1 <= d <= n_documents for d in df_list),
        f"{where}: document frequencies must be integers in 1..n_documents",
    )
    df = np.asarray(df_list, dtype=np.int64)

    idf_list = payload["idf"]
    _require(
        isinstance(idf_list, list) and len(idf_list) == len(terms),
        f"{where}: idf length must match terms",
    )
    idf = np.asarray(idf_list, dtype=np.float64)
    _require(
        bool(np.all(np.isfinite(idf)) and np.all(idf >= 1.0 - 1e-12)),
        f"{where}: idf weights must be finite and >= 1",
    )

    weights_list = payload["weights"]
    n_separators = 1 if len(label_set) == 2 else len(label_set)
    _require(
        isinstance(weights_list, list) and len(weights_list) == n_separators,
        f"{where}: expected {n_separators} weight arrays",
    )
    width = len(terms) + 1
    for row in weights_list:
        _require(
            isinstance(row, list) and len(row) == width,
            f"{where}: weight array of wrong length (want {width})",
        )
        _require(
            all(isinstance(v, (int, float)) and math.isfinite(v) for v in row),
            f"{where}: weights must be finite numbers",
        )
    weights = np.asarray(weights_list, dtype=np.float64)

    vocabulary = Vocabulary(
        tuple(terms), {t: i for i, t in enumerate(terms)}, df, n_documents
    )
    return LinearModel(label_set, weights, TfIdfModel(spec, vocabulary, idf), config)


def load(path) -> EnsembleModel:
    """Read and validate a model file."""
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except FileNotFoundError:
        raise ModelFormatError(f"no such model file: {path}") from None
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"{path} is not valid UTF-8: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"{path}: parse error at offset {exc.pos}: {exc.msg}"
        ) from None

    _require(isinstance(payload, dict), "model file must hold a JSON object")
    version = payload.get("format_version")
    _require(
        version == FORMAT_VERSION,
        f"unknown format_version {version!r} (supported: {FORMAT_VERSION})",
    )

    labels = payload.get("labels")
    _require(
        isinstance(labels, list)
        and len(labels) >= 2
        and all(isinstance(l, str) for l in labels),
        "labels must be a list of at least 2 strings",
    )
    keys = [label_sort_key(l) for l in labels]
    _require(
        all(a < b for a, b in zip(keys, keys[1:])),
        "labels must be strictly ascending in NFC byte order",
    )
    label_set = LabelSet(tuple(labels))

    members_payload = payload.get("members")
    _require(
        isinstance(members_payload, list) and len(members_payload) >= 1,
        "members must be a non-empty list",
    )
    members = tuple(
        _load_member(m, label_set, i) for i, m in enumerate(members_payload)
    )
    return EnsembleModel(label_set, members)
