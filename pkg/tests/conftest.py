import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

DATA_DIR = Path(__file__).parent / "data"

EXAMPLE_SRC = "I gess almost people cannot speaking English .".split()
EXAMPLE_TGT = "I guess most people cannot speak English .".split()
EXAMPLE_DICTIONARY = frozenset(
    {"i", "guess", "most", "people", "cannot", "speak", "english", "almost"}
)
REFERENCE_TREE = "(S (NP (DT the) (NN cat)) (VP (VBD sat)))"


@pytest.fixture
def example_pair():
    return list(EXAMPLE_SRC), list(EXAMPLE_TGT)


@pytest.fixture
def example_dictionary():
    return EXAMPLE_DICTIONARY


def token_strategy():
    # small vocabulary with case variants so ties and the case-substitution
    # discount actually get exercised
    return st.sampled_from(["a", "A", "b", "B", "c", "the", "The", "cat", "!"])


def token_list(max_size=8):
    return st.lists(token_strategy(), min_size=0, max_size=max_size)


@st.composite
def token_pairs(draw, max_size=8):
    return tuple(draw(token_list(max_size))), tuple(draw(token_list(max_size)))


@st.composite
def seeded_rng(draw):
    return random.Random(draw(st.integers(min_value=0, max_value=2**32 - 1)))
