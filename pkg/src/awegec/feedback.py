"""Feedback documents: per-sentence corrections, scores, and the inline
diff segments a client renders as red deletions and green insertions.

The segment list obeys two reconstruction laws: the tokens of the plain
and deleted segments, in order, are exactly the source tokens; the plain
and inserted segments are exactly the corrected tokens. Teacher review
can reject individual edits and override scores; applying a review
rebuilds the corrected text and segments from the surviving edits.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .align import Edit, apply_edits
from .errors import SchemaMismatch
from .essays import ALL_SCORE_NAMES, RUBRICS
from .scorer import OVERALL, RubricScoreSet
from .text import TokenizedSentence

PLAIN = "plain"
DELETED = "deleted"
INSERTED = "inserted"

SEGMENT_KINDS = (PLAIN, DELETED, INSERTED)


@dataclass(frozen=True)
class Segment:
    kind: str
    text: str

    def __post_init__(self):
        if self.kind not in SEGMENT_KINDS:
            raise ValueError(f"unknown segment kind {self.kind!r}")

    @property
    def tokens(self) -> list[str]:
        return self.text.split()


def edit_id(sentence_index: int, edit: Edit) -> str:
    """Stable identifier a reviewer can accept or reject by."""
    return f"{sentence_index}:{edit.start}:{edit.end}"


@dataclass(frozen=True)
class SentenceFeedback:
    source_tokens: tuple[str, ...]
    edits: tuple[Edit, ...]
    corrected_tokens: tuple[str, ...]
    backend: str = "rules"

    def __post_init__(self):
        source = TokenizedSentence.from_tokens(self.source_tokens)
        derived = apply_edits(source, list(self.edits)).tokens
        if derived != tuple(self.corrected_tokens):
            raise ValueError(
                f"edits applied to source give {derived}, "
                f"stored corrected is {tuple(self.corrected_tokens)}")


@dataclass(frozen=True)
class ReviewRecord:
    reviewer_id: str
    edit_decisions: Mapping[str, bool] = field(default_factory=dict)
    score_overrides: Mapping[str, float] = field(default_factory=dict)
    note: str = ""
    decided_at: str = ""

    def __post_init__(self):
        for name, value in self.score_overrides.items():
            if name not in ALL_SCORE_NAMES:
                raise SchemaMismatch(f"unknown score name {name!r}")
            if not 0.0 <= float(value) <= 100.0:
                raise ValueError(f"override {name}={value} outside [0, 100]")


@dataclass(frozen=True)
class FeedbackDocument:
    submission_id: str
    sentences: tuple[SentenceFeedback, ...]
    scores: RubricScoreSet
    segments: tuple[Segment, ...]
    review: ReviewRecord | None = None


def build_segments(sentences: Sequence[SentenceFeedback]) -> tuple[Segment, ...]:
    """Diff segments over the whole essay: replaced source tokens become
    a deleted segment, replacement tokens an inserted one, everything
    else plain. Adjacent plain segments are merged."""
    segments: list[Segment] = []

    def emit(kind: str, tokens: Sequence[str]):
        if not tokens:
            return
        text = " ".join(tokens)
        if kind == PLAIN and segments and segments[-1].kind == PLAIN:
            segments[-1] = Segment(PLAIN, segments[-1].text + " " + text)
        else:
            segments.append(Segment(kind, text))

    for sent in sentences:
        pos = 0
        for edit in sorted(sent.edits, key=lambda e: (e.start, e.end)):
            emit(PLAIN, sent.source_tokens[pos:edit.start])
            emit(DELETED, sent.source_tokens[edit.start:edit.end])
            emit(INSERTED, edit.replacement)
            pos = edit.end
        emit(PLAIN, sent.source_tokens[pos:])
    return tuple(segments)


def reconstruct_source(segments: Sequence[Segment]) -> list[str]:
    """Tokens of the plain and deleted segments, in order."""
    return [t for s in segments if s.kind in (PLAIN, DELETED) for t in s.tokens]


def reconstruct_corrected(segments: Sequence[Segment]) -> list[str]:
    """Tokens of the plain and inserted segments, in order."""
    return [t for s in segments if s.kind in (PLAIN, INSERTED) for t in s.tokens]


def make_document(
    submission_id: str,
    sentences: Sequence[SentenceFeedback],
    scores: RubricScoreSet,
    review: ReviewRecord | None = None,
) -> FeedbackDocument:
    return FeedbackDocument(
        submission_id=submission_id,
        sentences=tuple(sentences),
        scores=scores,
        segments=build_segments(sentences),
        review=review,
    )


def apply_review(doc: FeedbackDocument, review: ReviewRecord) -> FeedbackDocument:
    """Drop rejected edits, rebuild corrected text and segments, and
    replace overridden scores. Edits the review does not mention stay
    accepted."""
    kept_sentences: list[SentenceFeedback] = []
    for i, sent in enumerate(doc.sentences):
        kept = tuple(
            e for e in sent.edits
            if review.edit_decisions.get(edit_id(i, e), True)
        )
        if kept == sent.edits:
            kept_sentences.append(sent)
            continue
        source = TokenizedSentence.from_tokens(sent.source_tokens)
        corrected = apply_edits(source, list(kept))
        kept_sentences.append(replace(
            sent, edits=kept, corrected_tokens=corrected.tokens))

    merged = doc.scores.all_scores()
    for name, value in review.score_overrides.items():
        merged[name] = float(value)
    scores = RubricScoreSet(
        overall=merged[OVERALL],
        rubric_scores={r: merged[r] for r in RUBRICS},
    )
    return make_document(doc.submission_id, kept_sentences, scores, review=review)


def edit_to_dict(sentence_index: int, edit: Edit) -> dict:
    return {
        "id": edit_id(sentence_index, edit),
        "start": edit.start,
        "end": edit.end,
        "replacement": list(edit.replacement),
        "type": edit.etype,
    }


def document_to_dict(doc: FeedbackDocument) -> dict:
    return {
        "submission_id": doc.submission_id,
        "sentences": [
            {
                "source": list(s.source_tokens),
                "corrected": list(s.corrected_tokens),
                "backend": s.backend,
                "edits": [edit_to_dict(i, e) for e in s.edits],
            }
            for i, s in enumerate(doc.sentences)
        ],
        "scores": doc.scores.all_scores(),
        "segments": [{"kind": s.kind, "text": s.text} for s in doc.segments],
        "review": None if doc.review is None else review_to_dict(doc.review),
    }


def review_to_dict(review: ReviewRecord) -> dict:
    return {
        "reviewer_id": review.reviewer_id,
        "edit_decisions": dict(review.edit_decisions),
        "score_overrides": {k: float(v) for k, v in review.score_overrides.items()},
        "note": review.note,
        "decided_at": review.decided_at,
    }


def review_from_dict(raw: Mapping) -> ReviewRecord:
    return ReviewRecord(
        reviewer_id=str(raw.get("reviewer_id", "")),
        edit_decisions={str(k): bool(v)
                        for k, v in dict(raw.get("edit_decisions", {})).items()},
        score_overrides={str(k): float(v)
                         for k, v in dict(raw.get("score_overrides", {})).items()},
        note=str(raw.get("note", "")),
        decided_at=str(raw.get("decided_at", "")),
    )


def document_from_dict(raw: Mapping) -> FeedbackDocument:
    sentences = []
    for s in raw["sentences"]:
        edits = tuple(
            Edit((e["start"], e["end"]), tuple(e["replacement"]), e["type"])
            for e in s["edits"]
        )
        sentences.append(SentenceFeedback(
            source_tokens=tuple(s["source"]),
            edits=edits,
            corrected_tokens=tuple(s["corrected"]),
            backend=s.get("backend", "rules"),
        ))
    scores_raw = dict(raw["scores"])
    scores = RubricScoreSet(
        overall=float(scores_raw[OVERALL]),
        rubric_scores={r: float(scores_raw[r]) for r in RUBRICS},
    )
    review = raw.get("review")
    return FeedbackDocument(
        submission_id=str(raw["submission_id"]),
        sentences=tuple(sentences),
        scores=scores,
        segments=tuple(Segment(s["kind"], s["text"]) for s in raw["segments"]),
        review=None if review is None else review_from_dict(review),
    )
