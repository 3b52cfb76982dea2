"""Labeled text corpora in one-instance-per-line TSV form.

A dataset file is UTF-8 text, one instance per non-empty line, with exactly
one tab separating the instance text from its label.  Text is kept verbatim
apart from the line terminator; tabs and newlines inside a document are
therefore unrepresentable.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .errors import DataError


@dataclass(frozen=True)
class Document:
    """A single raw text instance, optionally carrying an opaque id."""

    text: str
    id: str | None = None

    def __post_init__(self):
        if len(self.text) < 1:
            raise DataError("document text must be non-empty")


@dataclass(frozen=True)
class LabeledCorpus:
    """Ordered (Document, label) pairs, in file order."""

    entries: tuple[tuple[Document, str], ...]

    def __post_init__(self):
        for _, label in self.entries:
            if not label or "\t" in label or "\n" in label:
                raise DataError(f"bad label {label!r}: empty or contains tab/newline")

    def __len__(self) -> int:
        return len(self.entries)

    def texts(self) -> list[str]:
        return [doc.text for doc, _ in self.entries]

    def labels(self) -> list[str]:
        return [label for _, label in self.entries]


def label_sort_key(label: str) -> bytes:
    """Bytewise-comparable key: UTF-8 encoding of the NFC-normalized label."""
    return unicodedata.normalize("NFC", label).encode("utf-8")


@dataclass(frozen=True)
class LabelSet:
    """Distinct labels in ascending order; the order every tie-break uses.

    Labels are sorted by the UTF-8 bytes of their NFC form, which gives a
    total, locale-independent order.
    """

    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        keys = [label_sort_key(label) for label in self.labels]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise DataError("labels must be strictly ascending in NFC byte order")
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DataError(f"unknown label: {label!r}") from None


def load_corpus(path) -> LabeledCorpus:
    """Read a `text<TAB>label` TSV file into a LabeledCorpus.

    Accepts LF or CRLF line terminators.  Empty lines are skipped; any other
    malformed line raises DataError naming the 1-based line number.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except FileNotFoundError:
        raise DataError(f"no such file: {path}") from None
    except UnicodeDecodeError as exc:
        raise DataError(f"{path} is not valid UTF-8: {exc}") from None

    entries = []
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.removesuffix("\n").removesuffix("\r")
        if not line:
            continue
        if line.count("\t") != 1:
            raise DataError(
                f"{path}:{lineno}: expected exactly one tab separating text and label"
            )
        text, label = line.split("\t")
        if not text:
            raise DataError(f"{path}:{lineno}: empty text field")
        if not label:
            raise DataError(f"{path}:{lineno}: empty label field")
        entries.append((Document(text), label))

    if not entries:
        raise DataError(f"{path}: no entries")
    return LabeledCorpus(tuple(entries))


def build_label_set(corpus: LabeledCorpus) -> LabelSet:
    """Collect the distinct labels of a corpus in ascending order."""
    distinct = sorted(set(corpus.labels()), key=label_sort_key)
    if len(distinct) < 2:
        raise DataError("degenerate label set: need at least 2 distinct labels")
    return LabelSet(tuple(distinct))
