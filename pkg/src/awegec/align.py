"""Token-level alignment between a source sentence and its correction.

A standard edit-distance DP produces an alignment script; maximal runs of
non-match operations merge into :class:`Edit` spans, which drive both the
inline feedback rendering and M2 serialization.

Cost model: match 0, insertion 1, deletion 1, substitution 1, discounted
to 0.25 when the two tokens are equal case-insensitively, so a pure case
change is preferred over a delete+insert pair. Ties at each DP cell break
in the fixed order match, sub, del, ins, making the aligner deterministic.
No transposition operation: a word-order swap surfaces as two edits.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Container, Sequence

from .errors import OverlappingEdits, SpanOutOfRange
from .text import TokenizedSentence

MATCH = "match"
SUB = "sub"
DEL = "del"
INS = "ins"

SUB_COST = 1.0
CASE_SUB_COST = 0.25
INS_COST = 1.0
DEL_COST = 1.0


@dataclass(frozen=True)
class Edit:
    """A contiguous source-span replacement.

    ``src_span`` is (start, end), 0-based, end-exclusive. An empty
    replacement is a deletion; ``start == end`` is an insertion point.
    """

    src_span: tuple[int, int]
    replacement: tuple[str, ...]
    etype: str = "OTHER"

    def __post_init__(self):
        start, end = self.src_span
        if start < 0 or end < start:
            raise ValueError(f"bad span {self.src_span}")
        if any((not tok) or any(c.isspace() for c in tok) for tok in self.replacement):
            raise ValueError("replacement tokens must be non-empty, whitespace-free")

    @property
    def start(self) -> int:
        return self.src_span[0]

    @property
    def end(self) -> int:
        return self.src_span[1]

    @property
    def tier(self) -> str:
        """Leading letter of the error type: M / U / R."""
        return self.etype.split(":", 1)[0]


@dataclass(frozen=True)
class AlignmentScript:
    """Ordered DP ops tracing a monotone path from (0,0) to (|src|,|tgt|).

    Each op is (kind, src index, tgt index) where the indices name the
    cell the op leaves: match/sub consume src[i] and tgt[j], del consumes
    src[i], ins consumes tgt[j].
    """

    ops: tuple[tuple[str, int, int], ...]
    total_cost: float


def _sub_cost(a: str, b: str) -> float:
    if a == b:
        return 0.0
    if a.lower() == b.lower():
        return CASE_SUB_COST
    return SUB_COST


def align(src: TokenizedSentence, tgt: TokenizedSentence) -> AlignmentScript:
    """Minimal-cost alignment of ``src`` to ``tgt`` under the module cost
    model, with deterministic tie-breaking.

    Accepts any iterable of tokens, ``TokenizedSentence`` included.
    """
    s, t = tuple(src), tuple(tgt)
    n, m = len(s), len(t)
    cost = [[0.0] * (m + 1) for _ in range(n + 1)]
    back: list[list[str]] = [[""] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        cost[i][0] = i * DEL_COST
        back[i][0] = DEL
    for j in range(1, m + 1):
        cost[0][j] = j * INS_COST
        back[0][j] = INS
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            diag = _sub_cost(s[i - 1], t[j - 1])
            candidates = (
                (cost[i - 1][j - 1] + diag, MATCH if diag == 0.0 else SUB),
                (cost[i - 1][j] + DEL_COST, DEL),
                (cost[i][j - 1] + INS_COST, INS),
            )
            # min cost; first listed kind wins ties (match/sub, then del, then ins)
            best_cost, best_kind = candidates[0]
            for c, kind in candidates[1:]:
                if c < best_cost:
                    best_cost, best_kind = c, kind
            cost[i][j] = best_cost
            back[i][j] = best_kind
    ops: list[tuple[str, int, int]] = []
    i, j = n, m
    while i > 0 or j > 0:
        kind = back[i][j]
        if kind in (MATCH, SUB):
            i, j = i - 1, j - 1
        elif kind == DEL:
            i -= 1
        else:
            j -= 1
        ops.append((kind, i, j))
    ops.reverse()
    return AlignmentScript(tuple(ops), cost[n][m])


def extract_edits(
    script: AlignmentScript,
    src: TokenizedSentence,
    tgt: TokenizedSentence,
) -> list[Edit]:
    """Merge runs of consecutive non-match ops into edits.

    A boundary between two adjacent substitutions starts a new edit, so
    a string of 1:1 replacements stays 1:1; runs mixing substitutions
    with insertions or deletions merge into a single edit.
    """
    tgt_tokens = tuple(tgt)
    edits: list[Edit] = []
    run_src_start = run_tgt_start = None
    last_kind = None
    src_pos = tgt_pos = 0

    def flush(src_end: int, tgt_end: int):
        nonlocal run_src_start, run_tgt_start
        if run_src_start is not None:
            edits.append(Edit(
                (run_src_start, src_end),
                tuple(tgt_tokens[run_tgt_start:tgt_end]),
            ))
            run_src_start = run_tgt_start = None

    for kind, i, j in script.ops:
        if kind == MATCH:
            flush(i, j)
            src_pos, tgt_pos = i + 1, j + 1
        else:
            if kind == SUB and last_kind == SUB:
                flush(i, j)
            if run_src_start is None:
                run_src_start, run_tgt_start = i, j
            src_pos = i + 1 if kind in (SUB, DEL) else i
            tgt_pos = j + 1 if kind in (SUB, INS) else j
        last_kind = kind
    flush(src_pos, tgt_pos)
    return edits


def apply_edits(src: TokenizedSentence, edits: Sequence[Edit]) -> TokenizedSentence:
    """Splice replacements into ``src``, right to left.

    ``edits`` must be sorted by span start and non-overlapping; adjacent
    spans (end == next start) are fine.
    """
    tokens = list(src)
    n = len(tokens)
    ordered = list(edits)
    for e in ordered:
        if e.end > n:
            raise SpanOutOfRange(f"edit span {e.src_span} exceeds length {n}")
    for e, nxt in zip(ordered, ordered[1:]):
        if nxt.start < e.start:
            raise OverlappingEdits("edits not sorted by span start")
        if nxt.start < e.end:
            raise OverlappingEdits(f"edits {e.src_span} and {nxt.src_span} overlap")
    for e in reversed(ordered):
        tokens[e.start:e.end] = list(e.replacement)
    return TokenizedSentence.from_tokens(tokens)


def char_edit_distance(a: str, b: str) -> int:
    """Restricted Damerau-Levenshtein distance (adjacent transposition
    counts 1, like "teh" → "the")."""
    la, lb = len(a), len(b)
    prev2: list[int] = []
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            c = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + c)
            if (
                i > 1 and j > 1
                and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]
            ):
                cur[j] = min(cur[j], prev2[j - 2] + 1)
        prev2, prev = prev, cur
    return prev[lb]


def is_punct_token(token: str) -> bool:
    return all(unicodedata.category(c).startswith("P") for c in token)


def classify_edit(
    edit: Edit,
    src: TokenizedSentence,
    dictionary: Container[str] = (),
) -> str:
    """Assign a simplified error-type code to an untyped edit.

    ``dictionary`` holds lowercase word forms; membership is checked on
    lowercased tokens. Tier by shape: M for insertions, U for deletions,
    R for replacements. Subtype rules, first match wins:

    * PUNCT: every affected token (source span and replacement) is punctuation
    * ORTH: source and replacement differ only by case or whitespace join
    * SPELL: 1:1 replacement, source word not in the dictionary, target in
      the dictionary, character edit distance at most 2
    * OTHER: anything else
    """
    source_slice = tuple(src)[edit.start:edit.end]
    if not source_slice:
        tier = "M"
    elif not edit.replacement:
        tier = "U"
    else:
        tier = "R"
    affected = tuple(source_slice) + tuple(edit.replacement)
    if affected and all(is_punct_token(t) for t in affected):
        return f"{tier}:PUNCT"
    if source_slice and edit.replacement:
        joined_src = "".join(source_slice).lower()
        joined_rep = "".join(edit.replacement).lower()
        if joined_src == joined_rep:
            return f"{tier}:ORTH"
    if tier == "R" and dictionary and len(source_slice) == 1 and len(edit.replacement) == 1:
        src_word = source_slice[0].lower()
        rep_word = edit.replacement[0].lower()
        if (
            src_word not in dictionary
            and rep_word in dictionary
            and char_edit_distance(src_word, rep_word) <= 2
        ):
            return f"{tier}:SPELL"
    return f"{tier}:OTHER"


def edits_between(
    src: TokenizedSentence,
    tgt: TokenizedSentence,
    dictionary: Container[str] | None = None,
) -> list[Edit]:
    """Align, extract, and (when a dictionary is given) classify."""
    edits = extract_edits(align(src, tgt), src, tgt)
    if dictionary is None:
        return edits
    return [
        Edit(e.src_span, e.replacement, classify_edit(e, src, dictionary))
        for e in edits
    ]
