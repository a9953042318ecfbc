"""The end-to-end analysis pipeline behind the service and batch CLI.

One call takes raw essay text and produces a complete feedback
document: sentence splitting and tokenization, optional entity-
placeholder substitution, correction through the configured backend,
feature extraction, score prediction, and diff-segment assembly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corrector import CorrectorConfig, correct
from .errors import CorrectionFailure, EmptyText, ScoringFailure
from .feedback import FeedbackDocument, SentenceFeedback, make_document
from .features import extract_features
from .ngram import NgramModel
from .noise import NamePool, substitute_essay
from .scorer import ScoreModel, neutral_model, predict
from .text import TokenizedSentence, split_sentences, tokenize


@dataclass(frozen=True)
class Engine:
    corrector_config: CorrectorConfig = field(default_factory=CorrectorConfig)
    model: ScoreModel = field(default_factory=neutral_model)
    ngram: NgramModel = field(default_factory=NgramModel)
    name_pool: NamePool | None = None
    seed: int = 0

    def _sentences(self, text: str) -> list[TokenizedSentence]:
        sentences = []
        for raw in split_sentences(text):
            sentence = tokenize(raw)
            if sentence.tokens:
                sentences.append(sentence)
        if not sentences:
            raise EmptyText("no tokens in submission")
        if self.name_pool is not None:
            sentences = substitute_essay(sentences, self.name_pool, self.seed)
        return sentences

    def analyze(self, text: str, prompt_id: int,
                submission_id: str = "") -> FeedbackDocument:
        if not text.strip():
            raise EmptyText("submission text is empty")
        sentences = self._sentences(text)
        try:
            results = correct(sentences, self.corrector_config)
        except Exception as exc:
            raise CorrectionFailure(str(exc)) from exc
        try:
            fv = extract_features(sentences, results, self.ngram)
            scores = predict(self.model, fv, prompt_id)
        except Exception as exc:
            raise ScoringFailure(str(exc)) from exc
        feedbacks = [
            SentenceFeedback(
                source_tokens=r.source.tokens,
                edits=tuple(r.edits),
                corrected_tokens=r.corrected.tokens,
                backend=r.backend,
            )
            for r in results
        ]
        return make_document(submission_id, feedbacks, scores)
