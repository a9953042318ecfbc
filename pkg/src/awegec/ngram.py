"""Count-based n-gram model with add-k smoothing.

Backs the fluency feature: cross-entropy of an essay under the model.
Contexts are the order-1 preceding tokens, padded with a start marker at
each sentence start. Out-of-vocabulary tokens map to an unknown marker
that is always part of the vocabulary, so every token has a probability;
with k > 0 that probability is strictly positive.

P(token | context) = (count(context, token) + k) / (count(context) + k * |V|)
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

UNK = "<unk>"
BOS = "<s>"

CHECKPOINT_VERSION = "ngram-1"


@dataclass
class NgramModel:
    order: int = 3
    k: float = 1.0
    vocabulary: set[str] = field(default_factory=lambda: {UNK})
    # context tuple -> {token: count}
    counts: dict[tuple[str, ...], dict[str, int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.k < 0:
            raise ValueError("smoothing constant must be >= 0")
        self.vocabulary.add(UNK)

    def _normalize(self, token: str) -> str:
        return token if token in self.vocabulary else UNK

    def _contexts(self, tokens):
        history = [BOS] * (self.order - 1)
        for tok in tokens:
            tok = self._normalize(tok)
            yield tuple(history), tok
            if self.order > 1:
                history = history[1:] + [tok]

    def fit(self, sentences: list[list[str]]) -> "NgramModel":
        """Count n-grams; the vocabulary grows to cover the data."""
        for sent in sentences:
            self.vocabulary.update(sent)
        for sent in sentences:
            for context, tok in self._contexts(sent):
                bucket = self.counts.setdefault(context, {})
                bucket[tok] = bucket.get(tok, 0) + 1
        return self

    def probability(self, context: tuple[str, ...], token: str) -> float:
        token = self._normalize(token)
        context = tuple(BOS if c == BOS else self._normalize(c) for c in context)
        bucket = self.counts.get(context, {})
        total = sum(bucket.values())
        v = len(self.vocabulary)
        denom = total + self.k * v
        if denom == 0:
            return 0.0
        return (bucket.get(token, 0) + self.k) / denom

    def cross_entropy(self, sentences: list[list[str]]) -> float:
        """Mean negative log2 probability per token; ``inf`` if any token
        has probability zero (possible only with k = 0)."""
        total = 0.0
        n = 0
        for sent in sentences:
            for context, tok in self._contexts(sent):
                p = self.probability(context, tok)
                if p == 0.0:
                    return math.inf
                total -= math.log2(p)
                n += 1
        if n == 0:
            raise ValueError("no tokens to score")
        return total / n

    def to_json(self) -> str:
        return json.dumps({
            "version": CHECKPOINT_VERSION,
            "order": self.order,
            "k": self.k,
            "vocabulary": sorted(self.vocabulary),
            "counts": [
                {"context": list(ctx), "tokens": bucket}
                for ctx, bucket in sorted(self.counts.items())
            ],
        }, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, contents: str) -> "NgramModel":
        raw = json.loads(contents)
        if raw.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {raw.get('version')!r}")
        model = cls(order=int(raw["order"]), k=float(raw["k"]),
                    vocabulary=set(raw["vocabulary"]))
        for entry in raw["counts"]:
            model.counts[tuple(entry["context"])] = {
                t: int(c) for t, c in entry["tokens"].items()
            }
        return model
