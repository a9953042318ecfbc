"""Integrated automated writing evaluation and grammatical error
correction: tokenization, edit extraction, M2 annotation, span-based
correction scoring, feature-based rubric scoring with cross-prompt
evaluation, and a feedback service with optional teacher review.
"""

__version__ = "0.1.0"

from .align import Edit, align, apply_edits, classify_edit, edits_between, extract_edits
from .errors import AwegecError
from .features import FEATURE_NAMES, FeatureVector, extract_features
from .scorer import ScoreModel, cross_prompt_eval, predict, qwk, train
from .text import TokenizedSentence, split_sentences, tokenize

__all__ = [
    "AwegecError",
    "Edit",
    "FEATURE_NAMES",
    "FeatureVector",
    "ScoreModel",
    "TokenizedSentence",
    "align",
    "apply_edits",
    "classify_edit",
    "cross_prompt_eval",
    "edits_between",
    "extract_edits",
    "extract_features",
    "predict",
    "qwk",
    "split_sentences",
    "tokenize",
    "train",
    "__version__",
]
