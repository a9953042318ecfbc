"""Span-based correction scoring: precision, recall and F-beta.

An edit counts as a true positive when its source span and replacement
both match a gold edit exactly; the error type is ignored. With several
annotators, each sentence is scored against the annotator that maximizes
(tp, -fp, -fn) lexicographically for that sentence, and the chosen counts
are summed over the corpus before computing P/R/F.

Zero-count conventions: precision and recall are 1.0 on an empty
denominator; F is 0 when precision and recall are both 0, and also 0 in
the fully degenerate case tp = fp = fn = 0, which the report flags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .align import Edit
from .errors import NoAnnotators
from .m2 import AnnotatedSentence

DEFAULT_BETA = 0.5


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_beta: float
    beta: float
    degenerate: bool = False

    def render(self) -> str:
        label = f"F{self.beta:g}"
        lines = [
            f"tp: {self.tp}",
            f"fp: {self.fp}",
            f"fn: {self.fn}",
            f"precision: {self.precision:.4f}",
            f"recall: {self.recall:.4f}",
            f"{label}: {self.f_beta:.4f}",
        ]
        if self.degenerate:
            lines.append("degenerate: true (no edits on either side)")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({
            "tp": self.tp, "fp": self.fp, "fn": self.fn,
            "precision": self.precision, "recall": self.recall,
            "f_beta": self.f_beta, "beta": self.beta,
            "degenerate": self.degenerate,
        }, sort_keys=True)


def _edit_key(e: Edit) -> tuple[tuple[int, int], tuple[str, ...]]:
    return (e.src_span, e.replacement)


def match_edits(hyp: list[Edit], gold: list[Edit]) -> tuple[int, int, int]:
    """(tp, fp, fn) by exact (span, replacement) matching."""
    hyp_set = {_edit_key(e) for e in hyp}
    gold_set = {_edit_key(e) for e in gold}
    tp = len(hyp_set & gold_set)
    return tp, len(hyp_set) - tp, len(gold_set) - tp


def make_report(tp: int, fp: int, fn: int, beta: float = DEFAULT_BETA) -> EvalReport:
    precision = 1.0 if tp + fp == 0 else tp / (tp + fp)
    recall = 1.0 if tp + fn == 0 else tp / (tp + fn)
    degenerate = tp == 0 and fp == 0 and fn == 0
    b2 = beta * beta
    if degenerate or (b2 * precision + recall) == 0:
        f = 0.0
    else:
        f = (1 + b2) * precision * recall / (b2 * precision + recall)
    return EvalReport(tp, fp, fn, precision, recall, f, beta, degenerate)


def best_annotator(
    hyp: list[Edit], gold: AnnotatedSentence
) -> tuple[int, tuple[int, int, int]]:
    """Annotator maximizing (tp, -fp, -fn); ties go to the lowest id."""
    best = None
    for annotator in sorted(gold.annotations):
        counts = match_edits(hyp, list(gold.annotations[annotator]))
        key = (counts[0], -counts[1], -counts[2])
        if best is None or key > best[0]:
            best = (key, annotator, counts)
    if best is None:
        raise NoAnnotators(-1)
    return best[1], best[2]


def score_corpus(
    pairs: list[tuple[list[Edit], AnnotatedSentence]],
    beta: float = DEFAULT_BETA,
) -> EvalReport:
    """Corpus-level report from per-sentence hypothesis/gold pairs."""
    tp = fp = fn = 0
    for index, (hyp, gold) in enumerate(pairs):
        if not gold.annotations:
            raise NoAnnotators(index)
        _, (s_tp, s_fp, s_fn) = best_annotator(hyp, gold)
        tp, fp, fn = tp + s_tp, fp + s_fp, fn + s_fn
    return make_report(tp, fp, fn, beta)
