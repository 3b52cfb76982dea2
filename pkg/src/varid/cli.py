"""Command-line interface: train, predict, evaluate, grid-search, featurize.

Exit codes: 0 success, 1 usage error, 2 data error (bad files, bad labels,
bad model files), 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import model_io
from .corpus import Document, load_corpus
from .ensemble import MemberSpec, predict_batch, train_ensemble
from .errors import DataError, InternalError
from .evaluation import report, write_report
from .features import (
    FeatureKind,
    FeatureSpec,
    fit_tfidf,
    parse_spec_list,
    transform,
)
from .svm import TrainConfig
from .tuning import (
    DEFAULT_C_VALUES,
    GridSpec,
    format_combination,
    grid_search,
    trace_lines,
)

PRESETS = {
    "adi": ("char:3,char:4,char:5", 1.0),
    "dfs": ("char:3,char:4,char:5,char:6,word:3", 100.0),
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; remap usage errors to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _c_value_list(text: str) -> tuple[float, ...]:
    parts = [p for p in (s.strip() for s in text.split(",")) if p]
    if not parts:
        raise argparse.ArgumentTypeError("empty C value list")
    return tuple(_positive_float(p) for p in parts)


def _add_solver_flags(sub):
    sub.add_argument("--c", type=_positive_float, default=None,
                     help="SVM regularization parameter C")
    sub.add_argument("--tolerance", type=_positive_float, default=1e-4,
                     help="solver stopping tolerance (default 1e-4)")
    sub.add_argument("--max-epochs", type=_positive_int, default=1000,
                     help="solver epoch cap (default 1000)")
    sub.add_argument("--seed", type=int, default=42,
                     help="seed for the per-epoch instance permutation (default 42)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="varid", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", help="train an ensemble and save it")
    train.add_argument("--train", required=True, metavar="TSV",
                       help="training corpus (text<TAB>label per line)")
    train.add_argument("--model", required=True, help="output model file")
    group = train.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=sorted(PRESETS),
                       help="shipped member/C configuration")
    group.add_argument("--features", metavar="SPEC,...",
                       help="member feature specs, e.g. char:3,char:4,word:2")
    train.add_argument("--skip-exact", action="store_true",
                       help="skip bigrams use exactly k intervening tokens")
    _add_solver_flags(train)
    train.set_defaults(func=cmd_train)

    predict = commands.add_parser("predict", help="predict labels for a file")
    predict.add_argument("--model", required=True, help="model file")
    predict.add_argument("input", help="TSV corpus or plain text, one doc per line")
    predict.add_argument("--output", default=None,
                         help="predictions TSV (default: stdout)")
    predict.set_defaults(func=cmd_predict)

    evaluate = commands.add_parser("evaluate", help="score a model on labeled data")
    evaluate.add_argument("--model", required=True, help="model file")
    evaluate.add_argument("--test", required=True, metavar="TSV", help="labeled test set")
    evaluate.add_argument("--report", required=True, metavar="DIR",
                          help="directory for scores.tsv and confusion matrices")
    evaluate.set_defaults(func=cmd_evaluate)

    grid = commands.add_parser("grid-search",
                               help="search C and member combinations on a dev split")
    grid.add_argument("--train", required=True, metavar="TSV")
    grid.add_argument("--dev", required=True, metavar="TSV")
    grid.add_argument("--grid", default=None, metavar="CFG",
                      help="grid config file (key = value lines)")
    grid.add_argument("--c-values", type=_c_value_list, default=None,
                      help="comma-separated C candidates (overrides config)")
    grid.add_argument("--report", default=None, metavar="DIR",
                      help="directory for the trace.tsv file")
    grid.add_argument("--skip-exact", action="store_true",
                      help="skip bigrams use exactly k intervening tokens")
    _add_solver_flags(grid)
    grid.set_defaults(func=cmd_grid_search)

    featurize = commands.add_parser("featurize",
                                    help="dump tf-idf vectors for one feature spec")
    featurize.add_argument("--features", required=True, metavar="SPEC",
                           help="a single feature spec, e.g. char:4")
    featurize.add_argument("input", help="TSV corpus or plain text, one doc per line")
    featurize.add_argument("--output", default=None, help="output TSV (default: stdout)")
    featurize.add_argument("--skip-exact", action="store_true",
                           help="skip bigrams use exactly k intervening tokens")
    featurize.set_defaults(func=cmd_featurize)

    return parser


def _apply_skip_exact(specs: list[FeatureSpec], flag: bool) -> list[FeatureSpec]:
    if not flag:
        return specs
    return [
        replace(s, skip_exact=True) if s.kind is FeatureKind.WORD_SKIP_BIGRAM else s
        for s in specs
    ]


def _resolve_members(args) -> tuple[list[FeatureSpec], TrainConfig]:
    if args.preset:
        spec_text, preset_c = PRESETS[args.preset]
    elif args.features:
        spec_text, preset_c = args.features, None
    else:
        raise DataError("one of --preset or --features is required")
    specs = _apply_skip_exact(parse_spec_list(spec_text), args.skip_exact)
    c = args.c if args.c is not None else (preset_c if preset_c is not None else 1.0)
    config = TrainConfig(C=c, tolerance=args.tolerance,
                         max_epochs=args.max_epochs, seed=args.seed)
    return specs, config


def _read_documents(path) -> list[tuple[int, Document]]:
    """Documents with their 1-based line numbers.

    A file whose non-empty lines all contain a tab is read as a
    `text<TAB>label` corpus (labels ignored); a file with no tabs at all is
    plain text, one document per non-empty line.  A mix is rejected rather
    than guessed at.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except FileNotFoundError:
        raise DataError(f"no such file: {path}") from None
    except UnicodeDecodeError as exc:
        raise DataError(f"{path} is not valid UTF-8: {exc}") from None

    stripped = [raw.removesuffix("\n").removesuffix("\r") for raw in raw_lines]
    tabbed = sum(1 for line in stripped if line and "\t" in line)
    non_empty = sum(1 for line in stripped if line)
    if tabbed and tabbed < non_empty:
        raise DataError(
            f"{path}: cannot tell TSV from plain text (some lines have tabs, "
            "some do not)"
        )
    if tabbed:
        corpus = load_corpus(path)
        docs = []
        entry = iter(corpus.entries)
        for lineno, line in enumerate(stripped, start=1):
            if line:
                doc, _ = next(entry)
                docs.append((lineno, doc))
        return docs
    return [
        (lineno, Document(line))
        for lineno, line in enumerate(stripped, start=1)
        if line
    ]


def cmd_train(args) -> int:
    specs, config = _resolve_members(args)
    corpus = load_corpus(args.train)
    model = train_ensemble(corpus, [MemberSpec(s, config) for s in specs])
    model_io.save(model, args.model)
    print(f"trained ensemble: {len(model.members)} members, "
          f"{len(model.label_set)} labels, C={config.C!r}")
    print("labels: " + " ".join(model.label_set.labels))
    for member in model.members:
        print(f"member {member.tfidf.spec}: "
              f"{len(member.tfidf.vocabulary)} terms")
    print(f"model written to {args.model}")
    return 0


def cmd_predict(args) -> int:
    model = model_io.load(args.model)
    docs = _read_documents(args.input)
    predictions = predict_batch(model, [doc for _, doc in docs])
    lines = [f"{lineno}\t{label}\n"
             for (lineno, _), label in zip(docs, predictions)]
    if args.output is None:
        sys.stdout.write("".join(lines))
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(lines))
    return 0


def cmd_evaluate(args) -> int:
    model = model_io.load(args.model)
    test = load_corpus(args.test)
    for _, label in test.entries:
        if label not in model.label_set:
            raise DataError(f"gold label {label!r} was not seen at training time")
    predictions = predict_batch(model, [doc for doc, _ in test.entries])
    score, matrix = report(test.labels(), predictions, model.label_set)
    write_report(args.report, score, matrix)
    print(f"macro_f1\t{score.macro_f1:.3f}")
    return 0


def _parse_grid_config(path) -> dict:
    """Line-based `key = value` config; `combination` may repeat."""
    values: dict = {"combinations": []}
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except FileNotFoundError:
        raise DataError(f"no such file: {path}") from None
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key:
            raise DataError(f"{path}:{lineno}: expected `key = value`")
        if key == "c_values":
            try:
                values["c_values"] = tuple(float(v) for v in value.split(","))
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad C value list") from None
        elif key == "combination":
            values["combinations"].append(tuple(parse_spec_list(value)))
        elif key == "tolerance":
            values["tolerance"] = float(value)
        elif key == "max_epochs":
            values["max_epochs"] = int(value)
        elif key == "seed":
            values["seed"] = int(value)
        else:
            raise DataError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def cmd_grid_search(args) -> int:
    cfg = _parse_grid_config(args.grid) if args.grid else {"combinations": []}
    c_values = args.c_values or cfg.get("c_values", DEFAULT_C_VALUES)
    combinations = tuple(
        tuple(_apply_skip_exact(list(combo), args.skip_exact))
        for combo in cfg["combinations"]
    )
    grid = GridSpec(c_values=tuple(c_values), combinations=combinations)
    base = TrainConfig(
        C=1.0,
        tolerance=cfg.get("tolerance", args.tolerance),
        max_epochs=cfg.get("max_epochs", args.max_epochs),
        seed=cfg.get("seed", args.seed),
    )
    train = load_corpus(args.train)
    dev = load_corpus(args.dev)
    result = grid_search(train, dev, grid, base)

    rows = trace_lines(result)
    if args.report is not None:
        out = Path(args.report)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "trace.tsv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(row + "\n" for row in rows))
    else:
        for row in rows:
            print(row)
    print(f"best\t{result.best_c!r}\t{format_combination(result.best_combination)}"
          f"\t{result.best_dev_f1!r}")
    return 0


def cmd_featurize(args) -> int:
    specs = _apply_skip_exact(parse_spec_list(args.features), args.skip_exact)
    if len(specs) != 1:
        raise DataError("featurize takes exactly one feature spec")
    docs = _read_documents(args.input)
    if not docs:
        if args.output is not None:
            open(args.output, "w", encoding="utf-8").close()
        return 0
    model = fit_tfidf([doc.text for _, doc in docs], specs[0])
    lines = []
    for _, doc in docs:
        vec = transform(model, doc)
        lines.append(
            "\t".join(f"{i}:{v!r}" for i, v in vec.pairs) + "\n"
        )
    if args.output is None:
        sys.stdout.write("".join(lines))
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(lines))
    return 0


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - safety net
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
