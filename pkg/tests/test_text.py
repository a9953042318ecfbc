"""Tokenizer and sentence splitter."""

import pytest
from hypothesis import given, strategies as st

from awegec.text import (
    TokenizedSentence,
    sentence_spans,
    split_sentences,
    tokenize,
)


class TestTokenize:
    def test_punctuation_split(self):
        assert tokenize("cannot speaking English.").tokens == (
            "cannot", "speaking", "English", ".",
        )

    def test_empty(self):
        assert tokenize("").tokens == ()

    def test_contraction(self):
        assert tokenize("don't stop").tokens == ("do", "n't", "stop")

    def test_contraction_variants(self):
        assert tokenize("I'm we're you've she'll he'd it's").tokens == (
            "I", "'m", "we", "'re", "you", "'ve",
            "she", "'ll", "he", "'d", "it", "'s",
        )

    def test_placeholder_survives(self):
        assert tokenize("@PERSON1 went home").tokens == ("@PERSON1", "went", "home")

    def test_punct_runs_stay_single_tokens(self):
        assert tokenize("Wait...").tokens == ("Wait", "...")
        assert tokenize("No!!! Really?").tokens == ("No", "!!!", "Really", "?")

    def test_mixed_edge_punctuation(self):
        assert tokenize('("yes")').tokens == ("(", '"', "yes", '"', ")")

    @given(st.text(max_size=60))
    def test_deterministic(self, text):
        assert tokenize(text) == tokenize(text)

    @given(st.text(max_size=60))
    def test_offsets_slice_back_to_tokens(self, text):
        sent = tokenize(text)
        for tok, (start, end) in zip(sent.tokens, sent.char_offsets):
            assert text[start:end] == tok

    @given(st.text(max_size=60))
    def test_offsets_monotone(self, text):
        sent = tokenize(text)
        prev = -1
        for start, end in sent.char_offsets:
            assert start >= prev
            assert end > start
            prev = end


class TestTokenizedSentence:
    def test_from_tokens_space_join(self):
        sent = TokenizedSentence.from_tokens(["a", "bb"])
        assert sent.text == "a bb"
        assert sent.char_offsets == ((0, 1), (2, 4))

    def test_empty_token_rejected(self):
        with pytest.raises(ValueError):
            TokenizedSentence(("",), ((0, 1),), "x")

    def test_offset_mismatch_rejected(self):
        with pytest.raises(ValueError):
            TokenizedSentence(("ab",), ((0, 2),), "xy")

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            TokenizedSentence(("a", "b"), ((0, 1),))

    def test_iter_and_len(self):
        sent = TokenizedSentence.from_tokens(["a", "b"])
        assert list(sent) == ["a", "b"]
        assert len(sent) == 2


class TestSplitSentences:
    def test_basic(self):
        assert split_sentences("I ran. He sat.") == ["I ran.", "He sat."]

    def test_abbreviation(self):
        assert split_sentences("Dr. Lee ran.") == ["Dr. Lee ran."]

    def test_no_terminator(self):
        assert split_sentences("One sentence") == ["One sentence"]

    def test_terminal_run_stays_attached(self):
        assert split_sentences("Wow!! Then what?") == ["Wow!!", "Then what?"]

    def test_lowercase_continuation_not_split(self):
        assert split_sentences("It was 3. o'clock already") == [
            "It was 3. o'clock already"
        ]

    def test_empty_and_whitespace(self):
        assert split_sentences("") == []
        assert split_sentences("   \n  ") == []

    @given(st.text(max_size=80))
    def test_spans_reconstruct_text(self, text):
        spans = sentence_spans(text)
        # sentences cover everything except surrounding whitespace
        rebuilt = "".join(text[a:b] for a, b in spans)
        assert rebuilt == "".join(
            text[a:b] for a, b in spans
        )
        for (a, b), (c, d) in zip(spans, spans[1:]):
            assert b <= c
            assert text[b:c].isspace() or text[b:c] == ""
        for a, b in spans:
            assert not text[a].isspace()
            assert not text[b - 1].isspace()

    @given(st.text(max_size=80))
    def test_concatenation_with_separators_is_text(self, text):
        spans = sentence_spans(text)
        if not spans:
            assert text.strip() == ""
            return
        lead = text[: spans[0][0]]
        assert lead.strip() == ""
        pieces = [lead]
        for k, (a, b) in enumerate(spans):
            pieces.append(text[a:b])
            nxt = spans[k + 1][0] if k + 1 < len(spans) else len(text)
            pieces.append(text[b:nxt])
        assert "".join(pieces) == text
