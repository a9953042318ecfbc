"""Essay records and TSV ingestion.

The input corpus is a UTF-8 TSV with a header. Required columns are
``essay_id``, ``essay_set`` and ``essay``; score columns are mapped to
rubric names through :class:`IngestConfig` because trait columns differ
between corpus releases.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import MalformedLine

RUBRICS = (
    "content",
    "organization",
    "word_choice",
    "sentence_fluency",
    "conventions",
    "prompt_adherence",
    "language",
    "narrativity",
)
OVERALL = "overall"
ALL_SCORE_NAMES = (OVERALL,) + RUBRICS

DEFAULT_PROMPTS = tuple(range(1, 9))


@dataclass(frozen=True)
class EssayRecord:
    essay_id: str
    prompt_id: int
    text: str
    gold_scores: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name in self.gold_scores:
            if name not in ALL_SCORE_NAMES:
                raise ValueError(f"unknown rubric {name!r}")


@dataclass
class IngestConfig:
    """Column mapping for the essay TSV."""

    id_column: str = "essay_id"
    set_column: str = "essay_set"
    text_column: str = "essay"
    # rubric name -> TSV column
    score_columns: dict[str, str] = field(default_factory=lambda: {
        OVERALL: "domain1_score",
        **{r: r for r in RUBRICS},
    })
    prompts: tuple[int, ...] = DEFAULT_PROMPTS

    @classmethod
    def from_json(cls, contents: str) -> "IngestConfig":
        raw = json.loads(contents)
        cfg = cls()
        for key in ("id_column", "set_column", "text_column"):
            if key in raw:
                setattr(cfg, key, raw[key])
        if "score_columns" in raw:
            cfg.score_columns = dict(raw["score_columns"])
        if "prompts" in raw:
            cfg.prompts = tuple(int(p) for p in raw["prompts"])
        return cfg


def read_essay_tsv(contents: str, config: IngestConfig | None = None) -> list[EssayRecord]:
    """Read the TSV into records. Unknown prompts and missing required
    columns raise :class:`MalformedLine` with the data line number."""
    config = config or IngestConfig()
    reader = csv.DictReader(io.StringIO(contents), delimiter="\t")
    if reader.fieldnames is None:
        return []
    for col in (config.id_column, config.set_column, config.text_column):
        if col not in reader.fieldnames:
            raise MalformedLine(1, f"missing required column {col!r}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        try:
            prompt_id = int(row[config.set_column])
        except (TypeError, ValueError):
            raise MalformedLine(lineno, "non-integer essay_set") from None
        if prompt_id not in config.prompts:
            raise MalformedLine(lineno, f"prompt {prompt_id} not in configured set")
        scores = {}
        for rubric, col in config.score_columns.items():
            value = row.get(col)
            if value is None or value == "":
                continue
            try:
                scores[rubric] = float(value)
            except ValueError:
                raise MalformedLine(lineno, f"non-numeric score in column {col!r}") from None
        text = row[config.text_column] or ""
        records.append(EssayRecord(row[config.id_column] or "", prompt_id, text, scores))
    return records


def write_essay_jsonl(records: list[EssayRecord]) -> str:
    lines = []
    for r in records:
        lines.append(json.dumps({
            "essay_id": r.essay_id,
            "prompt_id": r.prompt_id,
            "text": r.text,
            "gold_scores": r.gold_scores,
        }, sort_keys=True, ensure_ascii=False))
    return "".join(line + "\n" for line in lines)


def read_essay_jsonl(contents: str) -> list[EssayRecord]:
    records = []
    for lineno, line in enumerate(contents.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            records.append(EssayRecord(
                raw["essay_id"], int(raw["prompt_id"]), raw["text"],
                {k: float(v) for k, v in raw.get("gold_scores", {}).items()},
            ))
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedLine(lineno, str(exc)) from None
    return records
