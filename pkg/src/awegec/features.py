"""Essay feature extraction: complexity, fluency, and accuracy families.

Produces a fixed-schema :class:`FeatureVector` per essay. Tree-derived
features come from constituency parses when available; essays without
trees get zeros plus a ``trees_missing`` indicator so a downstream model
can learn around the absence. Accuracy features are densities over the
edits a correction backend proposed for the essay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .align import is_punct_token
from .corrector import CorrectionResult
from .errors import EmptyEssay, LengthMismatch, SchemaMismatch
from .ngram import NgramModel
from .text import TokenizedSentence
from .trees import ParseTree

SCHEMA_VERSION = "1"

FEATURE_NAMES: tuple[str, ...] = (
    "token_count",
    "sentence_count",
    "mean_sentence_length",
    "mean_word_length",
    "type_token_ratio",
    "yngve_mean",
    "yngve_max",
    "frazier_mean",
    "frazier_total",
    "trees_missing",
    "fluency",
    "edit_density",
    "edited_sentence_ratio",
    "m_edit_density",
    "u_edit_density",
    "r_edit_density",
)

# Reserved for a developmental-level metric; never emitted by this version.
RESERVED_FEATURE_NAMES: tuple[str, ...] = ("dlevel_mean",)

SENTENCE_LABELS = frozenset({"S", "SBAR", "SBARQ", "SINV", "SQ"})


@dataclass(frozen=True)
class FeatureVector:
    values: Mapping[str, float] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        expected = set(FEATURE_NAMES)
        got = set(self.values)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise SchemaMismatch(f"missing {missing}, unexpected {extra}")
        for name, value in self.values.items():
            if not math.isfinite(value):
                raise SchemaMismatch(f"feature {name!r} is not finite: {value!r}")

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def as_list(self) -> list[float]:
        """Values in schema order."""
        return [float(self.values[name]) for name in FEATURE_NAMES]

    def to_dict(self) -> dict[str, float]:
        return {name: float(self.values[name]) for name in FEATURE_NAMES}


def complexity_features(essay: Sequence[TokenizedSentence]) -> dict[str, float]:
    if not essay:
        raise EmptyEssay("no sentences")
    tokens = [tok for sent in essay for tok in sent.tokens]
    words = [tok for tok in tokens if not is_punct_token(tok)]
    return {
        "token_count": float(len(tokens)),
        "sentence_count": float(len(essay)),
        "mean_sentence_length": len(tokens) / len(essay),
        "mean_word_length": (
            sum(len(w) for w in words) / len(words) if words else 0.0
        ),
        "type_token_ratio": len({t.lower() for t in tokens}) / len(tokens),
    }


def _yngve_word_depths(tree: ParseTree) -> list[float]:
    # Children numbered right to left from 0; a word's depth is the sum
    # of those numbers along its root path.
    depths: list[float] = []

    def walk(node: ParseTree, acc: int):
        if node.is_preterminal:
            depths.append(float(acc))
            return
        last = len(node.children) - 1
        for i, child in enumerate(node.children):
            walk(child, acc + (last - i))

    walk(tree, 0)
    return depths


def yngve_depth(tree: ParseTree) -> tuple[float, float]:
    """(mean, max) word depth under right-to-left child numbering."""
    depths = _yngve_word_depths(tree)
    return sum(depths) / len(depths), max(depths)


def _node_weight(node: ParseTree) -> float:
    return 1.5 if node.label in SENTENCE_LABELS else 1.0


def _frazier_word_scores(tree: ParseTree) -> list[float]:
    scores: list[float] = []

    def walk(node: ParseTree, path: list[ParseTree]):
        path = path + [node]
        if node.is_preterminal:
            total = 0.0
            idx = len(path) - 1
            # Climb while each node is its parent's leftmost child; the
            # root terminates a surviving chain and is always counted.
            while True:
                current = path[idx]
                if idx == 0:
                    total += _node_weight(current)
                    break
                parent = path[idx - 1]
                if parent.children[0] is not current:
                    break
                total += _node_weight(current)
                idx -= 1
            scores.append(total)
            return
        for child in node.children:
            walk(child, path)

    walk(tree, [])
    return scores


def frazier_score(tree: ParseTree) -> tuple[float, float]:
    """(mean, total) word score over leftmost-ancestor chains, sentence
    labels weighted 1.5."""
    scores = _frazier_word_scores(tree)
    return sum(scores) / len(scores), sum(scores)


def tree_features(trees: Sequence[ParseTree] | None) -> dict[str, float]:
    """Pooled word-level statistics over an essay's parse trees."""
    if not trees:
        return {
            "yngve_mean": 0.0, "yngve_max": 0.0,
            "frazier_mean": 0.0, "frazier_total": 0.0,
            "trees_missing": 1.0,
        }
    depths = [d for t in trees for d in _yngve_word_depths(t)]
    scores = [s for t in trees for s in _frazier_word_scores(t)]
    return {
        "yngve_mean": sum(depths) / len(depths),
        "yngve_max": max(depths),
        "frazier_mean": sum(scores) / len(scores),
        "frazier_total": sum(scores),
        "trees_missing": 0.0,
    }


def fluency(essay: Sequence[TokenizedSentence], model: NgramModel) -> float:
    """1 / (1 + H) with H the model's base-2 cross-entropy over the
    essay; a zero-probability token drives the value to 0."""
    if not essay:
        raise EmptyEssay("no sentences")
    h = model.cross_entropy([list(s.tokens) for s in essay])
    if math.isinf(h):
        return 0.0
    return 1.0 / (1.0 + max(0.0, h))


def accuracy_features(
    essay: Sequence[TokenizedSentence],
    corrections: Sequence[CorrectionResult],
) -> dict[str, float]:
    if len(corrections) != len(essay):
        raise LengthMismatch(
            f"{len(essay)} sentences but {len(corrections)} correction results")
    if not essay:
        raise EmptyEssay("no sentences")
    total_tokens = sum(len(s.tokens) for s in essay)
    all_edits = [e for r in corrections for e in r.edits]
    tier_counts = {"M": 0, "U": 0, "R": 0}
    for e in all_edits:
        tier_counts[e.tier] += 1
    edited = sum(1 for r in corrections if r.edits)
    return {
        "edit_density": len(all_edits) / total_tokens,
        "edited_sentence_ratio": edited / len(essay),
        "m_edit_density": tier_counts["M"] / total_tokens,
        "u_edit_density": tier_counts["U"] / total_tokens,
        "r_edit_density": tier_counts["R"] / total_tokens,
    }


def extract_features(
    essay: Sequence[TokenizedSentence],
    corrections: Sequence[CorrectionResult],
    model: NgramModel,
    trees: Sequence[ParseTree] | None = None,
) -> FeatureVector:
    """Full feature vector for one essay."""
    values: dict[str, float] = {}
    values.update(complexity_features(essay))
    values.update(tree_features(trees))
    values["fluency"] = fluency(essay, model)
    values.update(accuracy_features(essay, corrections))
    return FeatureVector(values=values)


def feature_matrix(vectors: Iterable[FeatureVector]) -> list[list[float]]:
    """Rows in schema order, ready for numeric code."""
    return [v.as_list() for v in vectors]
