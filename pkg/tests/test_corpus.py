import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from varid import DataError, Document, LabeledCorpus, build_label_set, load_corpus
from varid.corpus import LabelSet, label_sort_key


def write(path, payload: bytes):
    with open(path, "wb") as fh:
        fh.write(payload)
    return path


class TestLoadCorpus:
    def test_two_line_file(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"hoi allemaal\tBEL\nhallo mensen\tDUT\n")
        corpus = load_corpus(path)
        assert len(corpus) == 2
        assert corpus.texts() == ["hoi allemaal", "hallo mensen"]
        assert corpus.labels() == ["BEL", "DUT"]

    def test_crlf_terminators(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"hoi\tBEL\r\nhallo\tDUT\r\n")
        assert load_corpus(path).texts() == ["hoi", "hallo"]

    def test_missing_final_newline(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"hoi\tBEL\nhallo\tDUT")
        assert load_corpus(path).labels() == ["BEL", "DUT"]

    def test_text_kept_verbatim(self, tmp_path):
        path = write(tmp_path / "c.tsv", "  padded text ! \tEGY\n".encode())
        assert load_corpus(path).texts() == ["  padded text ! "]

    def test_empty_file(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"")
        with pytest.raises(DataError, match="no entries"):
            load_corpus(path)

    def test_blank_lines_skipped(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"a b\tX\n\nc d\tY\n")
        assert len(load_corpus(path)) == 2

    def test_line_without_tab(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"no label here\n")
        with pytest.raises(DataError, match=r":1:"):
            load_corpus(path)

    def test_error_names_offending_line(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"ok\tX\nok\tY\ntwo\ttabs\there\n")
        with pytest.raises(DataError, match=r":3:"):
            load_corpus(path)

    def test_empty_text_field(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"\tX\n")
        with pytest.raises(DataError, match="empty text"):
            load_corpus(path)

    def test_empty_label_field(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"some text\t\n")
        with pytest.raises(DataError, match="empty label"):
            load_corpus(path)

    def test_not_utf8(self, tmp_path):
        path = write(tmp_path / "c.tsv", b"\xff\xfe bad\tX\n")
        with pytest.raises(DataError, match="UTF-8"):
            load_corpus(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="no such file"):
            load_corpus(tmp_path / "absent.tsv")

    def test_loading_is_deterministic(self, tmp_path):
        path = write(tmp_path / "c.tsv", "héllo wörld\tGLF\nsecond\tMSA\n".encode())
        assert load_corpus(path) == load_corpus(path)


class TestLabelSet:
    def test_adi_labels_sort_ascending(self):
        observed = ["NOR", "EGY", "GLF", "MSA", "LEV"]
        entries = tuple((Document(f"text {i}"), label) for i, label in enumerate(observed))
        label_set = build_label_set(LabeledCorpus(entries))
        assert label_set.labels == ("EGY", "GLF", "LEV", "MSA", "NOR")
        assert [label_set.index_of(l) for l in label_set.labels] == [0, 1, 2, 3, 4]

    def test_two_labels(self):
        entries = ((Document("a b"), "DUT"), (Document("c d"), "BEL"))
        assert build_label_set(LabeledCorpus(entries)).labels == ("BEL", "DUT")

    def test_single_label_is_degenerate(self):
        entries = tuple((Document(f"t{i}"), "MSA") for i in range(3))
        with pytest.raises(DataError, match="degenerate"):
            build_label_set(LabeledCorpus(entries))

    def test_unknown_label_lookup(self):
        label_set = LabelSet(("BEL", "DUT"))
        assert "BEL" in label_set and "EGY" not in label_set
        with pytest.raises(DataError, match="unknown label"):
            label_set.index_of("EGY")

    def test_unsorted_construction_rejected(self):
        with pytest.raises(DataError, match="ascending"):
            LabelSet(("DUT", "BEL"))

    def test_nfc_normalization_drives_order(self):
        # decomposed e + combining acute normalizes to precomposed U+00E9
        decomposed = "éx"
        assert label_sort_key(decomposed) == "éx".encode("utf-8")
        # NFC byte order, not code-point order: U+00E9 > 'z'
        assert LabelSet(("zz", decomposed)).labels == ("zz", decomposed)

    @given(st.permutations(["EGY", "GLF", "LEV", "MSA", "NOR", "EGY", "LEV"]))
    def test_order_insensitive(self, labels):
        entries = tuple((Document(f"d{i}"), l) for i, l in enumerate(labels))
        label_set = build_label_set(LabeledCorpus(entries))
        assert label_set.labels == ("EGY", "GLF", "LEV", "MSA", "NOR")

    @given(
        st.lists(
            st.text(
                alphabet=st.characters(blacklist_characters="\t\n\r"),
                min_size=1,
                max_size=6,
            ),
            min_size=2,
            max_size=8,
        )
    )
    def test_each_label_exactly_once(self, labels):
        distinct_nfc = {unicodedata.normalize("NFC", l) for l in labels}
        if len(distinct_nfc) < 2 or len(distinct_nfc) != len(set(labels)):
            return
        entries = tuple((Document(f"d{i}"), l) for i, l in enumerate(labels))
        label_set = build_label_set(LabeledCorpus(entries))
        assert sorted(label_set.labels) == sorted(set(labels))
        keys = [label_sort_key(l) for l in label_set.labels]
        assert keys == sorted(keys)


class TestDocument:
    def test_empty_text_rejected(self):
        with pytest.raises(DataError):
            Document("")

    def test_optional_id(self):
        assert Document("hello there", id="x1").id == "x1"
        assert Document("hello there").id is None
