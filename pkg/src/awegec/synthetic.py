"""Synthetic corpora with planted structure for tests and demos.

Each generator builds data whose correct answer is known by
construction, independent of the code under test: a spelling corpus
whose dictionary words are pairwise far apart (so every planted typo has
a unique restoration), an essay corpus whose gold scores are a noiseless
linear function of the essay's own measured features, random trees, and
random token pairs for alignment stress tests.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass

from .align import Edit
from .corrector import CorrectorConfig, RuleSet, correct
from .essays import OVERALL, EssayRecord
from .features import FeatureVector, extract_features
from .m2 import AnnotatedSentence
from .ngram import NgramModel
from .text import TokenizedSentence, split_sentences, tokenize
from .trees import ParseTree

_WORD_VOCAB = ("the", "cat", "dog", "sat", "on", "mat", "a", "ran", "big", ".")
_TREE_LABELS = ("S", "NP", "VP", "PP", "ADJP")
_PRETERMINALS = ("DT", "NN", "VBD", "JJ", "IN")
_EDIT_TYPES = ("R:OTHER", "M:OTHER", "U:OTHER", "R:SPELL")


def separated_dictionary(
    rng: random.Random, size: int = 100, min_distance: int = 3,
) -> dict[str, int]:
    """Random lowercase words kept only if at least ``min_distance``
    character edits from every word already kept. Any single-edit typo
    of such a word then has exactly one dictionary word within distance
    1, so restoration is unambiguous by construction."""
    from .align import char_edit_distance

    words: dict[str, int] = {}
    attempts = 0
    while len(words) < size and attempts < size * 200:
        attempts += 1
        length = rng.randint(6, 9)
        word = "".join(rng.choice(string.ascii_lowercase) for _ in range(length))
        if all(char_edit_distance(word, w) >= min_distance for w in words):
            words[word] = rng.randint(1, 100)
    if len(words) < size:
        raise RuntimeError("could not build a separated dictionary")
    return words


def make_typo(rng: random.Random, word: str) -> str:
    """A single-character corruption (substitute, delete, insert, or
    swap adjacent) that differs from the original."""
    letters = string.ascii_lowercase
    for _ in range(100):
        op = rng.choice(("sub", "del", "ins", "swap"))
        i = rng.randrange(len(word))
        if op == "sub":
            typo = word[:i] + rng.choice(letters) + word[i + 1:]
        elif op == "del" and len(word) > 1:
            typo = word[:i] + word[i + 1:]
        elif op == "ins":
            typo = word[:i] + rng.choice(letters) + word[i:]
        elif op == "swap" and i + 1 < len(word):
            typo = word[:i] + word[i + 1] + word[i] + word[i + 2:]
        else:
            continue
        if typo != word:
            return typo
    raise RuntimeError(f"could not corrupt {word!r}")


@dataclass(frozen=True)
class SpellingCorpus:
    dictionary: dict[str, int]
    clean: list[TokenizedSentence]
    corrupted: list[TokenizedSentence]
    # (sentence index, token index, original word) per planted typo
    planted: list[tuple[int, int, str]]


def make_spelling_corpus(
    seed: int = 0,
    n_sentences: int = 200,
    words_per_sentence: int = 8,
    corruption_rate: float = 0.8,
) -> SpellingCorpus:
    rng = random.Random(seed)
    dictionary = separated_dictionary(rng)
    vocabulary = sorted(dictionary)
    clean: list[TokenizedSentence] = []
    corrupted: list[TokenizedSentence] = []
    planted: list[tuple[int, int, str]] = []
    for i in range(n_sentences):
        words = [rng.choice(vocabulary) for _ in range(words_per_sentence)]
        tokens = words + ["."]
        clean.append(TokenizedSentence.from_tokens(tokens))
        bad = list(tokens)
        if rng.random() < corruption_rate:
            j = rng.randrange(words_per_sentence)
            planted.append((i, j, bad[j]))
            bad[j] = make_typo(rng, bad[j])
        corrupted.append(TokenizedSentence.from_tokens(bad))
    return SpellingCorpus(dictionary, clean, corrupted, planted)


@dataclass(frozen=True)
class PlantedEssays:
    essays: list[EssayRecord]
    features: list[FeatureVector]
    rules: RuleSet


# Weights of the planted score function over measured features.
_PLANTED_WEIGHTS = {
    "mean_sentence_length": 1.0,
    "type_token_ratio": 10.0,
    "edit_density": -30.0,
    "fluency": 5.0,
}


def make_planted_essays(
    seed: int = 0,
    prompts: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8),
    essays_per_prompt: int = 200,
    levels: tuple[int, int] = (1, 6),
) -> PlantedEssays:
    """Essays whose gold overall score is a linear function of their own
    extracted features, discretized onto a shared integer scale. A model
    that recovers the linear map scores near-perfectly."""
    rng = random.Random(seed)
    dictionary = separated_dictionary(rng)
    vocabulary = sorted(dictionary)
    rules = RuleSet(dictionary=dictionary)
    config = CorrectorConfig(rules=rules)

    texts: list[str] = []
    prompt_ids: list[int] = []
    for prompt_id in prompts:
        for _ in range(essays_per_prompt):
            n_sent = rng.randint(3, 8)
            sent_len = rng.randint(5, 12)
            window_size = rng.choice((5, 10, 20, 40))
            start = rng.randrange(len(vocabulary) - window_size + 1)
            window = vocabulary[start:start + window_size]
            n_typos = rng.randint(0, 4)
            sentences = []
            for _ in range(n_sent):
                sentences.append([rng.choice(window) for _ in range(sent_len)] + ["."])
            for _ in range(n_typos):
                si = rng.randrange(n_sent)
                ti = rng.randrange(sent_len)
                sentences[si][ti] = make_typo(rng, sentences[si][ti])
            texts.append(" ".join(" ".join(s) for s in sentences))
            prompt_ids.append(prompt_id)

    sample = [tokenize(s) for t in texts[:30] for s in split_sentences(t)]
    lm = NgramModel(order=2).fit([list(s.tokens) for s in sample])

    features: list[FeatureVector] = []
    for text in texts:
        sentences = [tokenize(s) for s in split_sentences(text)]
        results = correct(sentences, config)
        features.append(extract_features(sentences, results, lm))

    raws = [
        sum(weight * fv[name] for name, weight in _PLANTED_WEIGHTS.items())
        for fv in features
    ]
    low_raw, high_raw = min(raws), max(raws)
    low, high = levels
    essays = []
    for i, (raw, prompt_id) in enumerate(zip(raws, prompt_ids)):
        u = (raw - low_raw) / (high_raw - low_raw)
        gold = min(high, max(low, int((low + u * (high - low)) + 0.5)))
        essays.append(EssayRecord(
            essay_id=f"essay-{i:04d}",
            prompt_id=prompt_id,
            text=texts[i],
            gold_scores={OVERALL: float(gold)},
        ))
    return PlantedEssays(essays=essays, features=features, rules=rules)


def random_tree(rng: random.Random, max_depth: int = 4,
                max_children: int = 3) -> ParseTree:
    words = ("the", "cat", "sat", "big", "on")

    def build(depth: int) -> ParseTree:
        if depth >= max_depth or (depth > 0 and rng.random() < 0.3):
            return ParseTree(label=rng.choice(_PRETERMINALS),
                             leaf_token=rng.choice(words))
        n = rng.randint(1, max_children)
        return ParseTree(label=rng.choice(_TREE_LABELS),
                         children=tuple(build(depth + 1) for _ in range(n)))

    return build(0)


def random_token_pair(
    rng: random.Random, max_len: int = 8, vocab_size: int = 5,
) -> tuple[TokenizedSentence, TokenizedSentence]:
    vocab = [f"w{i}" for i in range(vocab_size)]
    src = [rng.choice(vocab) for _ in range(rng.randint(1, max_len))]
    tgt = [rng.choice(vocab) for _ in range(rng.randint(1, max_len))]
    return (TokenizedSentence.from_tokens(src),
            TokenizedSentence.from_tokens(tgt))


def random_m2_corpus(seed: int = 0, n_sentences: int = 50) -> list[AnnotatedSentence]:
    """Annotated sentences with random (valid) edit sets, for format
    round-trip tests."""
    rng = random.Random(seed)
    corpus = []
    for _ in range(n_sentences):
        n = rng.randint(1, 10)
        source = TokenizedSentence.from_tokens(
            [rng.choice(_WORD_VOCAB) for _ in range(n)])
        annotations: dict[int, tuple[Edit, ...]] = {}
        for annotator in range(rng.randint(1, 3)):
            if rng.random() < 0.2:
                annotations[annotator] = ()
                continue
            edits = []
            pos = 0
            for _ in range(rng.randint(1, 3)):
                if pos > n:
                    break
                start = rng.randint(pos, n)
                end = rng.randint(start, min(n, start + 2))
                replacement = tuple(
                    rng.choice(_WORD_VOCAB[:-1])
                    for _ in range(rng.randint(0, 2))
                )
                if start == end and not replacement:
                    replacement = (rng.choice(_WORD_VOCAB[:-1]),)
                edits.append(Edit((start, end), replacement,
                                  rng.choice(_EDIT_TYPES)))
                pos = end + 1 if end == start else end
            if edits:
                annotations[annotator] = tuple(edits)
            else:
                annotations[annotator] = ()
        corpus.append(AnnotatedSentence(source=source, annotations=annotations))
    return corpus
