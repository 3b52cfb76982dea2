"""
Model persistence
=================

Saves an ensemble to the canonical JSON format, loads it back, and checks
the two guarantees: identical predictions and byte-identical re-saves.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from varid import (
    Document,
    FeatureKind,
    FeatureSpec,
    LabeledCorpus,
    MemberSpec,
    TrainConfig,
    load,
    predict_batch,
    save,
    train_ensemble,
)

rng = np.random.default_rng(23)
ALPHABETS = ("abcd", "efgh")
LABELS = ("BEL", "DUT")


def corpus(n):
    entries = []
    for k in rng.integers(2, size=n):
        words = [
            "".join(ALPHABETS[k][int(rng.integers(4))]
                    for _ in range(int(rng.integers(3, 7))))
            for _ in range(int(rng.integers(3, 8)))
        ]
        entries.append((Document(" ".join(words)), LABELS[k]))
    return LabeledCorpus(tuple(entries))


model = train_ensemble(
    corpus(200),
    [MemberSpec(FeatureSpec(FeatureKind.CHAR_NGRAM, n), TrainConfig(C=1.0))
     for n in (3, 4)],
)

docs = [doc for doc, _ in corpus(50).entries]
before = predict_batch(model, docs)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "model.json"
    save(model, path)
    print(f"saved {path.stat().st_size} bytes")

    payload = json.loads(path.read_text())
    print("format_version:", payload["format_version"])
    print("labels:", payload["labels"])
    print("members:", [m["feature_spec"] for m in payload["members"]])

    reloaded = load(path)
    after = predict_batch(reloaded, docs)
    print("\npredictions identical after reload:", before == after)

    again = Path(tmp) / "model2.json"
    save(reloaded, again)
    print("save -> load -> save is byte-identical:",
          path.read_bytes() == again.read_bytes())
