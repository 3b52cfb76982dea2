import pytest

from synth import synthetic_corpus
from varid import (
    DataError,
    Document,
    FeatureKind,
    FeatureSpec,
    GridSpec,
    LabeledCorpus,
    TrainConfig,
    grid_search,
    sweep_members,
)
from varid.features import parse_spec
from varid.tuning import (
    ADI_COMBINATION,
    DFS_COMBINATION,
    default_combinations,
    format_combination,
    single_spec_menu,
    trace_lines,
)


def corpus_pair(rng, n_classes=2, n_train=60, n_dev=30):
    return (
        synthetic_corpus(n_train, n_classes, rng),
        synthetic_corpus(n_dev, n_classes, rng),
    )


class TestMenus:
    def test_single_spec_menu_shape(self):
        menu = single_spec_menu()
        assert [str(s) for s in menu] == [
            "char:1", "char:2", "char:3", "char:4", "char:5", "char:6",
            "char:7", "char:8", "word:1", "word:2", "word:3",
            "skip:1", "skip:2", "skip:3",
        ]

    def test_default_combinations(self):
        combos = default_combinations()
        assert len(combos) == 16
        assert combos[-2] == ADI_COMBINATION
        assert combos[-1] == DFS_COMBINATION
        assert format_combination(ADI_COMBINATION) == "char:3,char:4,char:5"
        assert format_combination(DFS_COMBINATION) == (
            "char:3,char:4,char:5,char:6,word:3"
        )


class TestGridSpec:
    def test_rejects_empty_c_values(self):
        with pytest.raises(DataError):
            GridSpec(c_values=())

    def test_rejects_unsorted_c_values(self):
        with pytest.raises(DataError, match="strictly increasing"):
            GridSpec(c_values=(1.0, 0.1))

    def test_rejects_nonpositive_c(self):
        with pytest.raises(DataError, match="positive"):
            GridSpec(c_values=(0.0, 1.0))

    def test_rejects_empty_combination(self):
        with pytest.raises(DataError, match="at least one"):
            GridSpec(c_values=(1.0,), combinations=((),))

    def test_defaults(self):
        grid = GridSpec()
        assert grid.c_values == (1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0)
        assert len(grid.combinations) == 16


class TestSweepMembers:
    def test_full_menu_row_per_spec(self, rng):
        train, dev = corpus_pair(rng)
        rows = sweep_members(train, dev, single_spec_menu(), TrainConfig())
        assert len(rows) == 14
        assert [str(spec) for spec, _ in rows] == [str(s) for s in single_spec_menu()]
        assert all(0.0 <= f1 <= 1.0 for _, f1 in rows)

    def test_single_spec(self, rng):
        train, dev = corpus_pair(rng)
        rows = sweep_members(
            train, dev, [FeatureSpec(FeatureKind.CHAR_NGRAM, 3)], TrainConfig()
        )
        assert len(rows) == 1
        assert rows[0][1] == 1.0  # disjoint marker alphabets separate perfectly

    def test_unknown_dev_label(self, rng):
        train, _ = corpus_pair(rng)
        dev = synthetic_corpus(10, 3, rng)  # has a third label train lacks
        with pytest.raises(DataError, match="unknown dev label"):
            sweep_members(train, dev, single_spec_menu()[:1], TrainConfig())

    def test_empty_specs(self, rng):
        train, dev = corpus_pair(rng)
        with pytest.raises(DataError, match="no feature specs"):
            sweep_members(train, dev, [], TrainConfig())


def contradictory_word_corpus():
    """Word unigrams are identical across classes; char trigrams differ."""
    x_rows = [(Document("zz aa bb"), "X")] * 8
    y_rows = [(Document("zz bb aa"), "Y")] * 8
    return LabeledCorpus(tuple(x_rows + y_rows))


class TestGridSearch:
    def test_single_candidate_wins_trivially(self, rng):
        train, dev = corpus_pair(rng)
        combo = (parse_spec("char:3"),)
        grid = GridSpec(c_values=(1.0,), combinations=(combo,))
        result = grid_search(train, dev, grid)
        assert result.best_c == 1.0
        assert result.best_combination == combo
        assert len(result.trace) == 1
        assert result.best_dev_f1 == result.trace[0][2]

    def test_trace_covers_every_candidate(self, rng):
        train, dev = corpus_pair(rng)
        combos = ((parse_spec("char:2"),), (parse_spec("char:3"),))
        grid = GridSpec(c_values=(0.5, 1.0, 2.0), combinations=combos)
        result = grid_search(train, dev, grid)
        assert len(result.trace) == 6
        assert result.best_dev_f1 == max(f1 for _, _, f1 in result.trace)
        # ascending C outer loop, combination order inner loop
        assert [c for c, _, _ in result.trace] == [0.5, 0.5, 1.0, 1.0, 2.0, 2.0]

    def test_equal_scores_break_to_smaller_c(self, rng):
        train, dev = corpus_pair(rng)
        combo = (parse_spec("char:3"),)
        grid = GridSpec(c_values=(0.5, 1.0), combinations=(combo,))
        result = grid_search(train, dev, grid)
        assert result.trace[0][2] == result.trace[1][2] == 1.0
        assert result.best_c == 0.5

    def test_duplicated_candidate_tie_breaks_to_first(self, rng):
        train, dev = corpus_pair(rng)
        combo = (parse_spec("char:3"),)
        grid = GridSpec(c_values=(0.5, 1.0), combinations=(combo, combo))
        result = grid_search(train, dev, grid)
        assert all(f1 == 1.0 for _, _, f1 in result.trace)
        assert (result.best_c, result.best_combination) == (0.5, combo)

    def test_dominating_candidate_wins(self):
        corpus = contradictory_word_corpus()
        grid = GridSpec(
            c_values=(1.0,),
            combinations=((parse_spec("word:1"),), (parse_spec("char:3"),)),
        )
        result = grid_search(corpus, corpus, grid)
        by_combo = {format_combination(combo): f1 for _, combo, f1 in result.trace}
        assert by_combo["word:1"] < 1.0
        assert by_combo["char:3"] == 1.0
        assert format_combination(result.best_combination) == "char:3"

    def test_same_seed_reproduces_trace(self, rng):
        train, dev = corpus_pair(rng)
        grid = GridSpec(
            c_values=(0.5, 1.0),
            combinations=((parse_spec("char:2"),), (parse_spec("word:1"),)),
        )
        base = TrainConfig(seed=123)
        first = grid_search(train, dev, grid, base)
        second = grid_search(train, dev, grid, base)
        assert trace_lines(first) == trace_lines(second)

    def test_trace_line_format(self, rng):
        train, dev = corpus_pair(rng)
        combo = (parse_spec("char:2"),)
        result = grid_search(train, dev, GridSpec(c_values=(1.0,), combinations=(combo,)))
        line = trace_lines(result)[0]
        c, combo_text, f1 = line.split("\t")
        assert c == "1.0"
        assert combo_text == "char:2"
        assert 0.0 <= float(f1) <= 1.0
