"""Feedback documents: diff segments, reviews, serialization."""

import pytest
from hypothesis import given, settings, strategies as st

from awegec.align import Edit, align, apply_edits, extract_edits
from awegec.errors import SchemaMismatch
from awegec.essays import RUBRICS
from awegec.feedback import (
    DELETED,
    INSERTED,
    PLAIN,
    FeedbackDocument,
    ReviewRecord,
    SentenceFeedback,
    apply_review,
    build_segments,
    document_from_dict,
    document_to_dict,
    edit_id,
    make_document,
    reconstruct_corrected,
    reconstruct_source,
    review_from_dict,
    review_to_dict,
)
from awegec.scorer import RubricScoreSet
from awegec.text import TokenizedSentence

from conftest import EXAMPLE_SRC, EXAMPLE_TGT, token_pairs


def scores(value=50.0):
    return RubricScoreSet(
        overall=value, rubric_scores={r: value for r in RUBRICS}
    )


def feedback_sentence(src, tgt):
    s = TokenizedSentence.from_tokens(src)
    t = TokenizedSentence.from_tokens(tgt)
    edits = tuple(extract_edits(align(s, t), s, t))
    return SentenceFeedback(
        source_tokens=tuple(src), edits=edits, corrected_tokens=tuple(tgt)
    )


EXAMPLE_EDITS = (
    Edit((1, 2), ("guess",), "R:SPELL"),
    Edit((2, 3), ("most",), "R:OTHER"),
    Edit((5, 6), ("speak",), "R:OTHER"),
)


class TestEditId:
    def test_format(self):
        assert edit_id(0, EXAMPLE_EDITS[0]) == "0:1:2"
        assert edit_id(3, Edit((4, 4), ("x",))) == "3:4:4"


class TestSentenceFeedback:
    def test_derivation_checked(self):
        with pytest.raises(ValueError):
            SentenceFeedback(
                source_tokens=("a", "b"),
                edits=(Edit((0, 1), ("x",)),),
                corrected_tokens=("a", "b"),
            )


class TestBuildSegments:
    def test_example_sentence_red_green_pairs(self):
        sent = feedback_sentence(EXAMPLE_SRC, EXAMPLE_TGT)
        segments = build_segments([sent])
        kinds_text = [(s.kind, s.text) for s in segments]
        assert kinds_text == [
            (PLAIN, "I"),
            (DELETED, "gess"),
            (INSERTED, "guess"),
            (DELETED, "almost"),
            (INSERTED, "most"),
            (PLAIN, "people cannot"),
            (DELETED, "speaking"),
            (INSERTED, "speak"),
            (PLAIN, "English ."),
        ]
        pairs = [
            (a, b) for a, b in zip(segments, segments[1:])
            if a.kind == DELETED and b.kind == INSERTED
        ]
        assert len(pairs) == 3

    def test_insertion_only(self):
        sent = feedback_sentence(["a", "c"], ["a", "b", "c"])
        segments = build_segments([sent])
        assert [(s.kind, s.text) for s in segments] == [
            (PLAIN, "a"), (INSERTED, "b"), (PLAIN, "c"),
        ]

    def test_deletion_only(self):
        sent = feedback_sentence(["a", "b", "c"], ["a", "c"])
        segments = build_segments([sent])
        assert [(s.kind, s.text) for s in segments] == [
            (PLAIN, "a"), (DELETED, "b"), (PLAIN, "c"),
        ]

    def test_plain_merges_across_sentences(self):
        sents = [
            feedback_sentence(["a", "b"], ["a", "b"]),
            feedback_sentence(["c"], ["c"]),
        ]
        segments = build_segments(sents)
        assert [(s.kind, s.text) for s in segments] == [(PLAIN, "a b c")]

    def test_reconstruction_laws_on_example(self):
        sent = feedback_sentence(EXAMPLE_SRC, EXAMPLE_TGT)
        segments = build_segments([sent])
        assert reconstruct_source(segments) == list(EXAMPLE_SRC)
        assert reconstruct_corrected(segments) == list(EXAMPLE_TGT)

    @given(token_pairs())
    @settings(max_examples=200, deadline=None)
    def test_reconstruction_laws_random(self, pair):
        src, tgt = pair
        sent = feedback_sentence(list(src), list(tgt))
        segments = build_segments([sent])
        assert reconstruct_source(segments) == list(src)
        assert reconstruct_corrected(segments) == list(tgt)


class TestReviewRecord:
    def test_unknown_score_name_rejected(self):
        with pytest.raises(SchemaMismatch):
            ReviewRecord(reviewer_id="t", score_overrides={"bogus": 50.0})

    def test_out_of_range_override_rejected(self):
        with pytest.raises(ValueError):
            ReviewRecord(reviewer_id="t", score_overrides={"content": 150.0})

    def test_round_trip(self):
        review = ReviewRecord(
            reviewer_id="t1",
            edit_decisions={"0:1:2": False},
            score_overrides={"content": 72.0},
            note="solid",
            decided_at="2024-01-01T00:00:00",
        )
        assert review_from_dict(review_to_dict(review)) == review


class TestApplyReview:
    def make_doc(self):
        sent = feedback_sentence(EXAMPLE_SRC, EXAMPLE_TGT)
        return make_document("sub1", [sent], scores())

    def test_rejecting_edit_restores_source_token(self):
        doc = self.make_doc()
        review = ReviewRecord(
            reviewer_id="t", edit_decisions={"0:1:2": False}
        )
        updated = apply_review(doc, review)
        assert "gess" in updated.sentences[0].corrected_tokens
        assert "guess" not in updated.sentences[0].corrected_tokens
        kept = [edit_id(0, e) for e in updated.sentences[0].edits]
        assert kept == ["0:2:3", "0:5:6"]
        texts = [(s.kind, s.text) for s in updated.segments]
        assert (PLAIN, "I gess") in texts

    def test_default_keeps_all_edits(self):
        doc = self.make_doc()
        updated = apply_review(doc, ReviewRecord(reviewer_id="t"))
        assert updated.sentences[0].corrected_tokens == tuple(EXAMPLE_TGT)

    def test_score_override_merged(self):
        doc = self.make_doc()
        review = ReviewRecord(reviewer_id="t", score_overrides={"content": 72.0})
        updated = apply_review(doc, review)
        assert updated.scores.rubric_scores["content"] == 72.0
        assert updated.scores.overall == 50.0

    def test_overall_override(self):
        doc = self.make_doc()
        review = ReviewRecord(reviewer_id="t", score_overrides={"overall": 91.0})
        updated = apply_review(doc, review)
        assert updated.scores.overall == 91.0

    def test_review_attached(self):
        doc = self.make_doc()
        review = ReviewRecord(reviewer_id="t")
        assert apply_review(doc, review).review == review


class TestSerialization:
    def test_document_round_trip(self):
        sent = feedback_sentence(EXAMPLE_SRC, EXAMPLE_TGT)
        doc = make_document(
            "sub1", [sent], scores(60.0),
            review=ReviewRecord(reviewer_id="t1", note="n"),
        )
        raw = document_to_dict(doc)
        assert raw["submission_id"] == "sub1"
        assert document_from_dict(raw) == doc

    def test_segment_dicts_have_kind_and_text(self):
        sent = feedback_sentence(["a"], ["b"])
        doc = make_document("s", [sent], scores())
        raw = document_to_dict(doc)
        assert raw["segments"][0] == {"kind": "deleted", "text": "a"}
