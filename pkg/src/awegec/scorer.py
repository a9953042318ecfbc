"""Rubric scoring: standardization, ridge regression, QWK, and the
leave-one-prompt-out evaluation harness.

Gold scores are min-max normalized to [0, 1] per (prompt, score name)
before fitting, so prompts with different native scales train together.
Predictions live in [0, 1] (clipped) and are reported on a 0-100 scale;
the harness maps them back to each test prompt's integer scale before
computing quadratic weighted kappa.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateRange,
    InsufficientData,
    LengthMismatch,
    MissingPrompt,
    SchemaMismatch,
)
from .essays import ALL_SCORE_NAMES, DEFAULT_PROMPTS, OVERALL, RUBRICS, EssayRecord
from .features import FEATURE_NAMES, SCHEMA_VERSION, FeatureVector

CHECKPOINT_VERSION = "scoremodel-1"
DEFAULT_LAMBDA_GRID = (0.0, 0.01, 0.1, 1.0, 10.0)
NEUTRAL_RAW = 0.5

PROMPT_SCALE = "prompt"
PERCENT_SCALE = "percent"


class NormResult(NamedTuple):
    value: float
    clipped: bool
    degenerate: bool


def minmax(value: float, low: float, high: float) -> NormResult:
    """Map ``value`` from [low, high] to [0, 1]; out-of-range inputs are
    clipped, a collapsed range yields 0.5, both flagged."""
    if low > high:
        raise ValueError(f"low {low} > high {high}")
    if low == high:
        return NormResult(0.5, False, True)
    u = (value - low) / (high - low)
    if u < 0.0 or u > 1.0:
        return NormResult(min(1.0, max(0.0, u)), True, False)
    return NormResult(u, False, False)


def denorm(u: float, low: float, high: float) -> NormResult:
    """Inverse of :func:`minmax` on [0, 1]."""
    if low > high:
        raise ValueError(f"low {low} > high {high}")
    clipped = u < 0.0 or u > 1.0
    u = min(1.0, max(0.0, u))
    if low == high:
        return NormResult(low, clipped, True)
    return NormResult(low + u * (high - low), clipped, False)


def round_half_up(x: float) -> int:
    """.5 always rounds toward +infinity (6.5 → 7, unlike banker's)."""
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class ScoreRange:
    low: float
    high: float

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError(f"low {self.low} > high {self.high}")

    @property
    def degenerate(self) -> bool:
        return self.low == self.high


@dataclass(frozen=True)
class Standardizer:
    means: tuple[float, ...]
    stds: tuple[float, ...]
    constant: tuple[bool, ...]

    @classmethod
    def fit(cls, matrix: np.ndarray) -> "Standardizer":
        means = matrix.mean(axis=0)
        stds = matrix.std(axis=0)
        constant = stds == 0.0
        stds = np.where(constant, 1.0, stds)
        return cls(tuple(map(float, means)), tuple(map(float, stds)),
                   tuple(map(bool, constant)))

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        z = (matrix - np.asarray(self.means)) / np.asarray(self.stds)
        # Features constant at fit time carry no signal; zeroing them
        # keeps transform output independent of their raw value.
        const = np.asarray(self.constant)
        if const.any():
            z = z.copy()
            z[:, const] = 0.0
        return z


def ridge_solve(z: np.ndarray, residual: np.ndarray, lam: float) -> np.ndarray:
    """Weights for min ||z w - residual||^2 + lam ||w||^2; lam = 0 falls
    back to the minimum-norm least-squares solution."""
    if lam < 0:
        raise ValueError("lam must be >= 0")
    if lam == 0.0:
        w, *_ = np.linalg.lstsq(z, residual, rcond=None)
        return w
    d = z.shape[1]
    return np.linalg.solve(z.T @ z + lam * np.eye(d), z.T @ residual)


@dataclass(frozen=True)
class RubricScoreSet:
    overall: float
    rubric_scores: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.rubric_scores) != set(RUBRICS):
            raise SchemaMismatch(
                f"rubric names {sorted(self.rubric_scores)} != {sorted(RUBRICS)}")
        for name, value in self.all_scores().items():
            if not 0.0 <= value <= 100.0:
                raise ValueError(f"score {name}={value} outside [0, 100]")

    def all_scores(self) -> dict[str, float]:
        out = {OVERALL: float(self.overall)}
        out.update({r: float(self.rubric_scores[r]) for r in RUBRICS})
        return out


@dataclass(frozen=True)
class ScoreModel:
    standardizer: Standardizer
    weights: Mapping[str, tuple[float, ...]]
    biases: Mapping[str, float]
    ranges: Mapping[tuple[int, str], ScoreRange]
    lam: float
    feature_names: tuple[str, ...] = FEATURE_NAMES
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        for name, w in self.weights.items():
            if len(w) != len(self.feature_names):
                raise SchemaMismatch(
                    f"weight vector for {name!r} has {len(w)} entries, "
                    f"schema has {len(self.feature_names)}")
            if name not in self.biases:
                raise SchemaMismatch(f"no bias for {name!r}")

    def to_json(self) -> str:
        return json.dumps({
            "version": CHECKPOINT_VERSION,
            "schema_version": self.schema_version,
            "feature_names": list(self.feature_names),
            "standardizer": {
                "means": list(self.standardizer.means),
                "stds": list(self.standardizer.stds),
                "constant": list(self.standardizer.constant),
            },
            "weights": {k: list(v) for k, v in self.weights.items()},
            "biases": dict(self.biases),
            "ranges": [
                {"prompt": p, "name": n, "low": r.low, "high": r.high}
                for (p, n), r in sorted(self.ranges.items())
            ],
            "lam": self.lam,
        }, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, contents: str) -> "ScoreModel":
        raw = json.loads(contents)
        if raw.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {raw.get('version')!r}")
        std = raw["standardizer"]
        return cls(
            standardizer=Standardizer(
                tuple(std["means"]), tuple(std["stds"]), tuple(std["constant"])),
            weights={k: tuple(v) for k, v in raw["weights"].items()},
            biases={k: float(v) for k, v in raw["biases"].items()},
            ranges={
                (int(e["prompt"]), e["name"]): ScoreRange(e["low"], e["high"])
                for e in raw["ranges"]
            },
            lam=float(raw["lam"]),
            feature_names=tuple(raw["feature_names"]),
            schema_version=raw["schema_version"],
        )


def neutral_model() -> ScoreModel:
    """Zero-weight model predicting 50.0 everywhere; the fallback when a
    deployment has no trained checkpoint."""
    d = len(FEATURE_NAMES)
    std = Standardizer((0.0,) * d, (1.0,) * d, (False,) * d)
    return ScoreModel(
        standardizer=std,
        weights={name: (0.0,) * d for name in ALL_SCORE_NAMES},
        biases={name: NEUTRAL_RAW for name in ALL_SCORE_NAMES},
        ranges={}, lam=0.0,
    )


def train(
    essays: Sequence[EssayRecord],
    features: Sequence[FeatureVector],
    lam: float = 1.0,
) -> ScoreModel:
    """Fit one ridge regressor per score name present in the gold data.

    Gold values are min-max normalized to [0, 1] per (prompt, name);
    features are z-scored with statistics shared across names. Names
    never seen in gold stay untrained and predict the neutral 0.5.
    """
    if len(essays) != len(features):
        raise LengthMismatch(
            f"{len(essays)} essays but {len(features)} feature vectors")
    if not essays:
        raise InsufficientData("no essays")
    matrix = np.asarray([f.as_list() for f in features], dtype=float)
    standardizer = Standardizer.fit(matrix)
    z = standardizer.transform(matrix)

    names = sorted({n for e in essays for n in e.gold_scores})
    if not names:
        raise InsufficientData("no gold scores in any essay")

    ranges: dict[tuple[int, str], ScoreRange] = {}
    for name in names:
        by_prompt: dict[int, list[float]] = {}
        for e in essays:
            if name in e.gold_scores:
                by_prompt.setdefault(e.prompt_id, []).append(e.gold_scores[name])
        for prompt_id, values in by_prompt.items():
            low, high = min(values), max(values)
            if low == high:
                raise DegenerateRange(prompt_id, name)
            ranges[(prompt_id, name)] = ScoreRange(low, high)

    weights: dict[str, tuple[float, ...]] = {}
    biases: dict[str, float] = {}
    for name in names:
        rows = [i for i, e in enumerate(essays) if name in e.gold_scores]
        if len(rows) < 2:
            raise InsufficientData(f"{len(rows)} essay(s) with {name!r} scores")
        y = np.asarray([
            minmax(essays[i].gold_scores[name],
                   ranges[(essays[i].prompt_id, name)].low,
                   ranges[(essays[i].prompt_id, name)].high).value
            for i in rows
        ])
        zn = z[rows]
        bias = float(y.mean())
        w = ridge_solve(zn, y - bias, lam)
        weights[name] = tuple(map(float, w))
        biases[name] = bias
    return ScoreModel(standardizer=standardizer, weights=weights,
                      biases=biases, ranges=ranges, lam=lam)


def predict_raw(model: ScoreModel, fv: FeatureVector) -> dict[str, float]:
    """Per-name prediction clipped to [0, 1]; untrained names get 0.5."""
    if fv.schema_version != model.schema_version:
        raise SchemaMismatch(
            f"feature schema {fv.schema_version!r} != model {model.schema_version!r}")
    x = np.asarray([fv.as_list()], dtype=float)
    z = model.standardizer.transform(x)[0]
    out: dict[str, float] = {}
    for name in ALL_SCORE_NAMES:
        if name in model.weights:
            raw = float(np.dot(model.weights[name], z)) + model.biases[name]
        else:
            raw = NEUTRAL_RAW
        out[name] = min(1.0, max(0.0, raw))
    return out


def predict(model: ScoreModel, fv: FeatureVector, prompt_id: int = 0) -> RubricScoreSet:
    """All nine scores on the 0-100 scale. ``prompt_id`` identifies the
    submission's prompt for callers that log or route by it; the 0-100
    scaling itself is prompt-independent."""
    raw = predict_raw(model, fv)
    return RubricScoreSet(
        overall=raw[OVERALL] * 100.0,
        rubric_scores={r: raw[r] * 100.0 for r in RUBRICS},
    )


def qwk(
    gold: Sequence[int],
    pred: Sequence[int],
    rating_range: tuple[int, int],
) -> float:
    """Quadratic weighted kappa on integer ratings in
    [rating_range[0], rating_range[1]]; perfect agreement with zero
    variance is 1.0."""
    if len(gold) != len(pred):
        raise LengthMismatch(f"{len(gold)} gold vs {len(pred)} predictions")
    if not gold:
        raise ValueError("ratings must be non-empty")
    low, high = rating_range
    if low > high:
        raise ValueError(f"empty rating range {rating_range}")
    k = high - low + 1
    for value in list(gold) + list(pred):
        if not low <= value <= high:
            raise ValueError(f"rating {value} outside [{low}, {high}]")
    if k == 1:
        return 1.0
    n = len(gold)
    observed = np.zeros((k, k))
    for g, p in zip(gold, pred):
        observed[g - low, p - low] += 1
    hist_g = observed.sum(axis=1)
    hist_p = observed.sum(axis=0)
    expected = np.outer(hist_g, hist_p) / n
    idx = np.arange(k)
    weight = (idx[:, None] - idx[None, :]) ** 2 / (k - 1) ** 2
    denominator = float((weight * expected).sum())
    numerator = float((weight * observed).sum())
    if denominator == 0.0:
        return 1.0
    return 1.0 - numerator / denominator


@dataclass(frozen=True)
class CrossPromptConfig:
    target: str = OVERALL
    lambda_grid: tuple[float, ...] = DEFAULT_LAMBDA_GRID
    prompts: tuple[int, ...] = DEFAULT_PROMPTS
    scale: str = PROMPT_SCALE

    def __post_init__(self):
        if self.target not in ALL_SCORE_NAMES:
            raise ValueError(f"unknown score name {self.target!r}")
        if not self.lambda_grid:
            raise ValueError("lambda grid must be non-empty")
        if len(set(self.prompts)) < 3:
            raise ValueError("need at least 3 prompts for train/dev/test splits")
        if self.scale not in (PROMPT_SCALE, PERCENT_SCALE):
            raise ValueError(f"unknown scale {self.scale!r}")


@dataclass(frozen=True)
class QwkRow:
    prompt_id: int
    qwk: float
    chosen_lambda: float
    n_test: int


@dataclass(frozen=True)
class QwkReport:
    rows: tuple[QwkRow, ...]
    average: float

    def render(self) -> str:
        lines = [f"{'prompt':>8}  {'qwk':>8}  {'lambda':>8}  {'n':>6}"]
        for row in self.rows:
            lines.append(
                f"{row.prompt_id:>8}  {row.qwk:>8.4f}  "
                f"{row.chosen_lambda:>8g}  {row.n_test:>6}")
        lines.append(f"{'average':>8}  {self.average:>8.4f}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({
            "rows": [
                {"prompt": r.prompt_id, "qwk": r.qwk,
                 "lambda": r.chosen_lambda, "n_test": r.n_test}
                for r in self.rows
            ],
            "average": self.average,
        }, sort_keys=True)


def _fold_split(prompts: tuple[int, ...], test: int) -> tuple[list[int], int]:
    """Dev prompt is the cyclic predecessor of the test prompt; the rest
    train (first prompt tests against the last as dev)."""
    i = prompts.index(test)
    dev = prompts[i - 1]
    return [p for p in prompts if p not in (test, dev)], dev


def _eval_prompt(
    model: ScoreModel,
    essays: list[EssayRecord],
    features: list[FeatureVector],
    target: str,
    scale: str,
) -> float:
    gold_values = [e.gold_scores[target] for e in essays]
    low_f, high_f = min(gold_values), max(gold_values)
    if scale == PERCENT_SCALE:
        low, high = 0, 100
        gold_ints = [round_half_up(minmax(v, low_f, high_f).value * 100.0)
                     for v in gold_values]
        pred_ints = [round_half_up(predict_raw(model, fv)[target] * 100.0)
                     for fv in features]
    else:
        low, high = round_half_up(low_f), round_half_up(high_f)
        gold_ints = [min(high, max(low, round_half_up(v))) for v in gold_values]
        pred_ints = [
            min(high, max(low, round_half_up(
                denorm(predict_raw(model, fv)[target], low_f, high_f).value)))
            for fv in features
        ]
    return qwk(gold_ints, pred_ints, (low, high))


def cross_prompt_eval(
    essays: Sequence[EssayRecord],
    features: Sequence[FeatureVector],
    config: CrossPromptConfig | None = None,
) -> QwkReport:
    """Leave-one-prompt-out: each prompt in turn is the test set, its
    cyclic predecessor the dev set for selecting the ridge strength, and
    the remaining prompts train the model. Predictions are mapped back
    to the test prompt's own integer scale before computing QWK."""
    config = config or CrossPromptConfig()
    if len(essays) != len(features):
        raise LengthMismatch(
            f"{len(essays)} essays but {len(features)} feature vectors")
    target = config.target
    pool = [(e, f) for e, f in zip(essays, features) if target in e.gold_scores]
    by_prompt: dict[int, list[tuple[EssayRecord, FeatureVector]]] = {}
    for e, f in pool:
        by_prompt.setdefault(e.prompt_id, []).append((e, f))
    for p in config.prompts:
        if p not in by_prompt:
            raise MissingPrompt(p)

    rows: list[QwkRow] = []
    for test_prompt in config.prompts:
        train_prompts, dev_prompt = _fold_split(config.prompts, test_prompt)
        train_set = [pair for p in train_prompts for pair in by_prompt[p]]
        dev_set = by_prompt[dev_prompt]
        test_set = by_prompt[test_prompt]

        best: tuple[float, float] | None = None  # (qwk, lam)
        for lam in config.lambda_grid:
            model = train([e for e, _ in train_set], [f for _, f in train_set], lam)
            dev_qwk = _eval_prompt(
                model, [e for e, _ in dev_set], [f for _, f in dev_set],
                target, config.scale)
            if best is None or (dev_qwk, -lam) > (best[0], -best[1]):
                best = (dev_qwk, lam)
        chosen = best[1]
        model = train([e for e, _ in train_set], [f for _, f in train_set], chosen)
        test_qwk = _eval_prompt(
            model, [e for e, _ in test_set], [f for _, f in test_set],
            target, config.scale)
        rows.append(QwkRow(test_prompt, test_qwk, chosen, len(test_set)))
    average = sum(r.qwk for r in rows) / len(rows)
    return QwkReport(rows=tuple(rows), average=average)
