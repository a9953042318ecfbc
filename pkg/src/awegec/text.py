"""Rule-based tokenizer and sentence splitter.

Both are deterministic and keep character offsets back into the original
text so that downstream edit rendering can always recover the source.
"""

from __future__ import annotations

from dataclasses import dataclass

# Characters peeled off token edges. '@' is deliberately absent so that
# anonymization placeholders like "@PERSON1" survive as single tokens.
PEEL_CHARS = frozenset(".,!?;:\"'()[]{}<>…«»“”‘’`-/\\|~*")

# Contraction suffixes, checked case-insensitively. Longest first.
CONTRACTION_SUFFIXES = ("n't", "'re", "'ve", "'ll", "'s", "'d", "'m")

DEFAULT_ABBREVIATIONS = frozenset({
    "dr.", "mr.", "mrs.", "ms.", "prof.", "jr.", "sr.", "st.", "mt.",
    "vs.", "etc.", "e.g.", "i.e.", "fig.", "no.", "inc.", "est.", "dept.",
})

TERMINALS = frozenset(".!?")


@dataclass(frozen=True)
class TokenizedSentence:
    """A token sequence plus per-token (start, end) offsets into ``text``.

    For sentences synthesized from tokens (corrector output, edit
    application) ``text`` is the single-space join of the tokens.
    """

    tokens: tuple[str, ...]
    char_offsets: tuple[tuple[int, int], ...]
    text: str = ""

    def __post_init__(self):
        if len(self.tokens) != len(self.char_offsets):
            raise ValueError("tokens and char_offsets must have equal length")
        prev_end = -1
        for tok, (start, end) in zip(self.tokens, self.char_offsets):
            if not tok:
                raise ValueError("empty token")
            if start < 0 or end <= start or start < prev_end:
                raise ValueError(f"bad offsets ({start}, {end})")
            if self.text and self.text[start:end] != tok:
                raise ValueError(f"offset slice {self.text[start:end]!r} != token {tok!r}")
            prev_end = end

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @classmethod
    def from_tokens(cls, tokens) -> "TokenizedSentence":
        """Build a sentence whose text is the space-join of ``tokens``."""
        tokens = tuple(tokens)
        offsets = []
        pos = 0
        for tok in tokens:
            offsets.append((pos, pos + len(tok)))
            pos += len(tok) + 1
        return cls(tokens, tuple(offsets), " ".join(tokens))


def _split_contraction(token: str, start: int) -> list[tuple[str, int, int]]:
    """Split one contraction suffix off ``token``; returns (text, start, end)."""
    low = token.lower()
    for suffix in CONTRACTION_SUFFIXES:
        if low.endswith(suffix) and len(token) > len(suffix):
            cut = len(token) - len(suffix)
            return [
                (token[:cut], start, start + cut),
                (token[cut:], start + cut, start + len(token)),
            ]
    return [(token, start, start + len(token))]


def _peel(chunk: str, start: int) -> list[tuple[str, int, int]]:
    """Peel edge punctuation off a whitespace-delimited chunk.

    Runs of the same character ("...", "!!") come off as one token.
    """
    leading: list[tuple[str, int, int]] = []
    trailing: list[tuple[str, int, int]] = []
    lo, hi = 0, len(chunk)
    while lo < hi and chunk[lo] in PEEL_CHARS:
        run = lo + 1
        while run < hi and chunk[run] == chunk[lo]:
            run += 1
        leading.append((chunk[lo:run], start + lo, start + run))
        lo = run
    while hi > lo and chunk[hi - 1] in PEEL_CHARS:
        run = hi - 1
        while run > lo and chunk[run - 1] == chunk[hi - 1]:
            run -= 1
        trailing.append((chunk[run:hi], start + run, start + hi))
        hi = run
    middle = _split_contraction(chunk[lo:hi], start + lo) if lo < hi else []
    return leading + middle + list(reversed(trailing))


def tokenize(text: str) -> TokenizedSentence:
    """Tokenize ``text``: whitespace split, edge-punctuation peel, then
    contraction split per :data:`CONTRACTION_SUFFIXES`.

    >>> tokenize("don't stop").tokens
    ('do', "n't", 'stop')
    """
    parts: list[tuple[str, int, int]] = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        parts.extend(_peel(text[i:j], i))
        i = j
    tokens = tuple(p[0] for p in parts)
    offsets = tuple((p[1], p[2]) for p in parts)
    return TokenizedSentence(tokens, offsets, text)


@dataclass(frozen=True)
class SentenceSplitter:
    """Splits on a terminal-punctuation run followed by whitespace and an
    uppercase letter, unless the preceding word is a known abbreviation.
    """

    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS

    def spans(self, text: str) -> list[tuple[int, int]]:
        """Sentence (start, end) spans; gaps between spans are whitespace."""
        spans = []
        n = len(text)
        start = 0
        while start < n and text[start].isspace():
            start += 1
        i = start
        while i < n:
            if text[i] in TERMINALS:
                end = i + 1
                while end < n and text[end] in TERMINALS:
                    end += 1
                nxt = end
                while nxt < n and text[nxt].isspace():
                    nxt += 1
                boundary = (
                    nxt > end  # at least one whitespace char
                    and nxt < n
                    and text[nxt].isupper()
                    and not self._is_abbreviation(text, i)
                )
                if boundary:
                    spans.append((start, end))
                    start = nxt
                    i = nxt
                    continue
                i = end
            else:
                i += 1
        tail_end = n
        while tail_end > start and text[tail_end - 1].isspace():
            tail_end -= 1
        if tail_end > start:
            spans.append((start, tail_end))
        return spans

    def split(self, text: str) -> list[str]:
        return [text[a:b] for a, b in self.spans(text)]

    def _is_abbreviation(self, text: str, period_at: int) -> bool:
        if text[period_at] != ".":
            return False
        j = period_at
        while j > 0 and not text[j - 1].isspace():
            j -= 1
        word = text[j:period_at + 1].lower()
        return word in self.abbreviations


_DEFAULT_SPLITTER = SentenceSplitter()


def split_sentences(text: str) -> list[str]:
    """Split ``text`` into sentences with the default abbreviation list.

    >>> split_sentences("I ran. He sat.")
    ['I ran.', 'He sat.']
    """
    return _DEFAULT_SPLITTER.split(text)


def sentence_spans(text: str) -> list[tuple[int, int]]:
    return _DEFAULT_SPLITTER.spans(text)
