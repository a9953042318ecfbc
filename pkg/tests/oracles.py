"""Independent reference implementations used to check the package.

Everything here is deliberately written along a different route than the
code under test: forward recursion instead of a backward DP table, the
closed-form F-beta identity instead of precision/recall composition, an
explicit confusion matrix for kappa, and an augmented least-squares system
for ridge. Keep these free of imports from ``awegec`` internals other than
plain data (Edit spans are handled as tuples).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def min_alignment_cost(src: tuple[str, ...], tgt: tuple[str, ...]) -> float:
    """Minimum alignment cost by exhaustive forward search over all
    monotone paths.  Costs: match 0, ins/del 1, sub 1 (0.25 when the
    tokens differ only by case)."""

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> float:
        if i == len(src) and j == len(tgt):
            return 0.0
        best = math.inf
        if i < len(src):
            best = min(best, 1.0 + go(i + 1, j))
        if j < len(tgt):
            best = min(best, 1.0 + go(i, j + 1))
        if i < len(src) and j < len(tgt):
            a, b = src[i], tgt[j]
            step = 0.0 if a == b else (0.25 if a.lower() == b.lower() else 1.0)
            best = min(best, step + go(i + 1, j + 1))
        return best

    return go(0, 0)


def fbeta_closed_form(tp: int, fp: int, fn: int, beta: float) -> float:
    """F-beta via the single-fraction identity; 0 on an all-zero
    denominator (which covers the fully degenerate tp=fp=fn=0 case)."""
    b2 = beta * beta
    denom = (1 + b2) * tp + b2 * fn + fp
    if denom == 0:
        return 0.0
    return (1 + b2) * tp / denom


def qwk_confusion_matrix(
    gold: list[int], pred: list[int], low: int, high: int
) -> float:
    """Quadratic weighted kappa built from an explicit K x K confusion
    matrix and marginal products."""
    k = high - low + 1
    if k == 1:
        return 1.0
    observed = [[0] * k for _ in range(k)]
    for g, p in zip(gold, pred):
        observed[g - low][p - low] += 1
    n = len(gold)
    gold_marginal = [sum(row) for row in observed]
    pred_marginal = [sum(observed[i][j] for i in range(k)) for j in range(k)]
    num = 0.0
    den = 0.0
    for i in range(k):
        for j in range(k):
            w = (i - j) ** 2 / (k - 1) ** 2
            num += w * observed[i][j]
            den += w * gold_marginal[i] * pred_marginal[j] / n
    if den == 0.0:
        return 1.0
    return 1.0 - num / den


def ridge_augmented_lstsq(
    z: np.ndarray, y: np.ndarray, lam: float
) -> np.ndarray:
    """Ridge weights via least squares on the row-augmented system
    [Z; sqrt(lam) I] w = [y; 0]."""
    d = z.shape[1]
    a = np.vstack([z, math.sqrt(lam) * np.eye(d)])
    b = np.concatenate([y, np.zeros(d)])
    w, *_ = np.linalg.lstsq(a, b, rcond=None)
    return w


def span_counts(
    hyp: set[tuple[tuple[int, int], tuple[str, ...]]],
    gold: set[tuple[tuple[int, int], tuple[str, ...]]],
) -> tuple[int, int, int]:
    """(tp, fp, fn) by plain set arithmetic over (span, replacement)."""
    return len(hyp & gold), len(hyp - gold), len(gold - hyp)


def corpus_fbeta_by_enumeration(
    pairs: list[tuple[set, dict[int, set]]], beta: float
) -> float:
    """Corpus F-beta with the per-sentence annotator chosen by explicit
    enumeration: max (tp, -fp, -fn), ties to the smallest annotator id."""
    tp = fp = fn = 0
    for hyp, per_annotator in pairs:
        best = None
        for annotator in sorted(per_annotator):
            counts = span_counts(hyp, per_annotator[annotator])
            key = (counts[0], -counts[1], -counts[2])
            if best is None or key > best[0]:
                best = (key, counts)
        s_tp, s_fp, s_fn = best[1]
        tp, fp, fn = tp + s_tp, fp + s_fp, fn + s_fn
    return fbeta_closed_form(tp, fp, fn, beta)


def yngve_depths_by_stack(tree) -> list[int]:
    """Per-word Yngve depth via a pushdown simulation: expand nodes
    depth-first left to right; when a preterminal is popped, the nodes
    still pending on the stack are exactly the right siblings along its
    root path, so the word's depth is the stack size."""
    depths: list[int] = []
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.leaf_token is not None:
            depths.append(len(stack))
        else:
            for child in reversed(node.children):
                stack.append(child)
    return depths
