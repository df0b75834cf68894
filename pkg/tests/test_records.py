import pytest

from readpair import (
    DataError,
    DistinctCorpus,
    Harder,
    PairInstance,
    ParallelCorpus,
    ReadingLevel,
    Slug,
    TextRecord,
    normalize_text,
)
from readpair.records import pair_instance_id

from .conftest import make_record


class TestNormalizeText:
    def test_collapses_whitespace_runs(self):
        assert normalize_text("a  b\t\tc\n\nd") == "a b c d"

    def test_strips_bom_and_line_endings(self):
        assert normalize_text("﻿Hello\r\nworld\r!") == "Hello world !"

    def test_strips_outer_whitespace(self):
        assert normalize_text("  padded  ") == "padded"

    def test_empty_stays_empty(self):
        assert normalize_text(" \n \t ") == ""


class TestRecords:
    def test_empty_body_rejected(self):
        with pytest.raises(DataError, match="empty body"):
            make_record("x", 0, body="   ")

    def test_empty_id_rejected(self):
        with pytest.raises(DataError, match="non-empty id"):
            TextRecord(id="", body="text", level=ReadingLevel(0, "0"), corpus_name="c")

    def test_levels_order_by_rank(self):
        assert ReadingLevel(0, "ELE") < ReadingLevel(2, "ADV")

    def test_slug_members_must_share_slug_id(self):
        good = make_record("a", 0, slug="s1")
        bad = make_record("b", 1, slug="other")
        with pytest.raises(DataError, match="slug_id"):
            Slug(slug_id="s1", members=(good, bad))

    def test_duplicate_ids_rejected_in_distinct_corpus(self):
        records = (make_record("same", 0), make_record("same", 1))
        with pytest.raises(DataError, match="duplicate record id"):
            DistinctCorpus(name="c", records=records)

    def test_duplicate_slug_ids_rejected(self):
        slug = Slug(slug_id="s", members=(make_record("a", 0, slug="s"),))
        slug2 = Slug(slug_id="s", members=(make_record("b", 1, slug="s"),))
        with pytest.raises(DataError, match="duplicate slug_id"):
            ParallelCorpus(name="c", slugs=(slug, slug2))


class TestPairInstance:
    def test_gold_follows_ranks(self):
        hard, easy = make_record("h", 3), make_record("e", 1)
        pair = PairInstance.from_records(hard, easy)
        assert pair.gold is Harder.TEXT1
        assert pair.level_distance == 2
        swapped = PairInstance.from_records(easy, hard)
        assert swapped.gold is Harder.TEXT2

    def test_same_rank_rejected(self):
        with pytest.raises(DataError, match="share rank"):
            PairInstance.from_records(make_record("a", 1), make_record("b", 1))

    def test_cross_corpus_rejected(self):
        a = make_record("a", 0, corpus="one")
        b = make_record("b", 1, corpus="two")
        with pytest.raises(DataError, match="different corpora"):
            PairInstance.from_records(a, b)

    def test_inconsistent_gold_rejected(self):
        hard, easy = make_record("h", 3), make_record("e", 1)
        with pytest.raises(DataError, match="gold contradicts"):
            PairInstance(
                instance_id="x",
                text1=hard,
                text2=easy,
                gold=Harder.TEXT2,
                level_distance=2,
            )

    def test_instance_id_is_stable_and_order_sensitive(self):
        # frozen value: prediction files written by other processes (or
        # other versions) must keep joining to gold
        assert pair_instance_id("osen", "a", "b") == "dddd1747b614c93c"
        assert pair_instance_id("osen", "a", "b") != pair_instance_id("osen", "b", "a")
        assert pair_instance_id("osen", "a", "b") != pair_instance_id("camb", "a", "b")

    def test_flipped(self):
        assert Harder.TEXT1.flipped() is Harder.TEXT2
        assert Harder.TEXT2.flipped() is Harder.TEXT1
