"""HTTP service: accept submissions, process them through the engine,
and serve feedback, optionally gated behind teacher review.

Submission lifecycle: received → processed → released, or processed →
returned → received (after the learner resubmits). With review mode off
learners read documents as soon as processing finishes; with it on, a
teacher must release (or return) each submission first.

All state lives in the submission store; restarting the process loses
nothing. Submissions still marked received at startup are processed
during app creation, so a crash mid-pipeline heals on restart.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from fastapi import BackgroundTasks, FastAPI, Request
from fastapi.responses import JSONResponse

from .corrector import CorrectorConfig, ExternalBackendConfig, RuleSet
from .engine import Engine
from .errors import CorrectionFailure, EmptyText, ScoringFailure
from .essays import DEFAULT_PROMPTS
from .feedback import (
    apply_review,
    document_from_dict,
    document_to_dict,
    review_from_dict,
)
from .ngram import NgramModel
from .noise import NamePool
from .scorer import ScoreModel, neutral_model
from .store import SubmissionStore

RECEIVED = "received"
PROCESSED = "processed"
RELEASED = "released"
RETURNED = "returned"

LEARNER = "learner"
TEACHER = "teacher"


@dataclass
class ServiceConfig:
    store_dir: str
    review_mode: bool = False
    prompts: tuple[int, ...] = DEFAULT_PROMPTS
    port: int = 8000
    model_path: str | None = None
    ngram_path: str | None = None
    rules_path: str | None = None
    name_pool_path: str | None = None
    backend: str = "rules"
    external_endpoint: str | None = None
    external_batch_size: int = 32
    external_timeout_ms: int = 10_000
    fallback_to_rules: bool = True
    seed: int = 0

    @classmethod
    def from_json(cls, contents: str) -> "ServiceConfig":
        raw = json.loads(contents)
        if "prompts" in raw:
            raw["prompts"] = tuple(int(p) for p in raw["prompts"])
        return cls(**raw)


def build_engine(config: ServiceConfig) -> Engine:
    def read(path: str) -> str:
        with open(path, encoding="utf-8") as handle:
            return handle.read()

    rules = RuleSet.from_json(read(config.rules_path)) if config.rules_path else RuleSet()
    external = None
    if config.external_endpoint:
        external = ExternalBackendConfig(
            endpoint=config.external_endpoint,
            batch_size=config.external_batch_size,
            timeout_ms=config.external_timeout_ms,
        )
    corrector = CorrectorConfig(
        backend=config.backend, rules=rules, external=external,
        fallback_to_rules=config.fallback_to_rules,
    )
    model = (ScoreModel.from_json(read(config.model_path))
             if config.model_path else neutral_model())
    ngram = (NgramModel.from_json(read(config.ngram_path))
             if config.ngram_path else NgramModel())
    pool = (NamePool.from_json(read(config.name_pool_path))
            if config.name_pool_path else None)
    return Engine(corrector_config=corrector, model=model, ngram=ngram,
                  name_pool=pool, seed=config.seed)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _error(http_status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse({"code": code, "message": message, **extra},
                        status_code=http_status)


def create_app(config: ServiceConfig, engine: Engine | None = None) -> FastAPI:
    engine = engine or build_engine(config)
    store = SubmissionStore(config.store_dir)
    in_flight: set[str] = set()
    guard = threading.Lock()

    def process(submission_id: str) -> None:
        with guard:
            if submission_id in in_flight:
                return
            in_flight.add(submission_id)
        try:
            record = store.load(submission_id)
            if record is None or record["status"] != RECEIVED:
                return
            try:
                doc = engine.analyze(record["text"], record["prompt_id"],
                                     submission_id)
            except EmptyText as exc:
                record["error"] = {"stage": "ingest", "message": str(exc)}
                store.save(submission_id, record)
                return
            except CorrectionFailure as exc:
                record["error"] = {"stage": "correction", "message": str(exc)}
                store.save(submission_id, record)
                return
            except ScoringFailure as exc:
                record["error"] = {"stage": "scoring", "message": str(exc)}
                store.save(submission_id, record)
                return
            record["status"] = PROCESSED
            record["document"] = document_to_dict(doc)
            record["error"] = None
            store.save(submission_id, record)
        finally:
            with guard:
                in_flight.discard(submission_id)

    def submission_view(record: dict) -> dict:
        view = {
            "id": record["id"],
            "status": record["status"],
            "learner_id": record["learner_id"],
            "prompt_id": record["prompt_id"],
            "created_at": record["created_at"],
            "error": record.get("error"),
        }
        document = record.get("document")
        if record["status"] == RETURNED and document and document.get("review"):
            view["review_note"] = document["review"].get("note", "")
        return view

    app = FastAPI(title="awegec feedback service")

    @app.post("/api/submissions")
    async def submit(request: Request, background: BackgroundTasks):
        try:
            payload = await request.json()
        except json.JSONDecodeError:
            return _error(400, "bad_request", "body must be JSON")
        text = payload.get("text", "")
        if not isinstance(text, str) or not text.strip():
            return _error(400, "empty_text", "submission text is empty")
        try:
            prompt_id = int(payload.get("prompt_id"))
        except (TypeError, ValueError):
            return _error(400, "unknown_prompt", "prompt_id must be an integer")
        if prompt_id not in config.prompts:
            return _error(400, "unknown_prompt", f"unknown prompt {prompt_id}")
        submission_id = uuid.uuid4().hex[:12]
        record = {
            "id": submission_id,
            "learner_id": str(payload.get("learner_id", "") or "anonymous"),
            "prompt_id": prompt_id,
            "text": text,
            "created_at": _now(),
            "status": RECEIVED,
            "error": None,
            "document": None,
        }
        store.save(submission_id, record)
        background.add_task(process, submission_id)
        return JSONResponse({"id": submission_id, "status": RECEIVED},
                            status_code=201)

    @app.get("/api/submissions/{submission_id}")
    async def get_status(submission_id: str):
        record = store.load(submission_id)
        if record is None:
            return _error(404, "not_found", f"no submission {submission_id}")
        return submission_view(record)

    @app.get("/api/submissions/{submission_id}/feedback")
    async def get_feedback(submission_id: str, role: str = LEARNER):
        record = store.load(submission_id)
        if record is None:
            return _error(404, "not_found", f"no submission {submission_id}")
        status = record["status"]
        document = record.get("document")
        if role == TEACHER:
            if document is None:
                return _error(409, "not_ready",
                              f"submission is {status}", status=status)
            return document
        visible = status == RELEASED or (
            status == PROCESSED and not config.review_mode)
        if not visible or document is None:
            return _error(409, "not_ready",
                          f"submission is {status}", status=status)
        return document

    @app.get("/api/review/queue")
    async def review_queue():
        rows = []
        for submission_id in store.list_ids():
            record = store.load(submission_id)
            if record is not None and record["status"] == PROCESSED:
                rows.append(submission_view(record))
        return {"submissions": rows}

    @app.post("/api/review/{submission_id}")
    async def post_review(submission_id: str, request: Request):
        if not config.review_mode:
            return _error(409, "review_disabled",
                          "review mode is disabled for this deployment")
        record = store.load(submission_id)
        if record is None:
            return _error(404, "not_found", f"no submission {submission_id}")
        if record["status"] == RELEASED:
            return _error(409, "already_released",
                          "submission was already released")
        if record["status"] != PROCESSED:
            return _error(409, "not_processed",
                          f"submission is {record['status']}, not processed")
        try:
            payload = await request.json()
        except json.JSONDecodeError:
            return _error(400, "bad_request", "body must be JSON")
        action = payload.get("action", "release")
        if action not in ("release", "return"):
            return _error(400, "bad_request", f"unknown action {action!r}")
        try:
            review = review_from_dict(payload)
        except Exception as exc:
            return _error(400, "bad_review", str(exc))
        if not review.decided_at:
            review = replace(review, decided_at=_now())
        document = document_from_dict(record["document"])
        if action == "return":
            record["status"] = RETURNED
            record["document"] = document_to_dict(replace(document, review=review))
            store.save(submission_id, record)
            return {"id": submission_id, "status": RETURNED}
        released = apply_review(document, review)
        record["status"] = RELEASED
        record["document"] = document_to_dict(released)
        store.save(submission_id, record)
        return record["document"]

    @app.post("/api/submissions/{submission_id}/resubmit")
    async def resubmit(submission_id: str, request: Request,
                       background: BackgroundTasks):
        record = store.load(submission_id)
        if record is None:
            return _error(404, "not_found", f"no submission {submission_id}")
        if record["status"] != RETURNED:
            return _error(409, "not_returned",
                          f"submission is {record['status']}, not returned")
        try:
            payload = await request.json()
        except json.JSONDecodeError:
            payload = {}
        text = payload.get("text", record["text"])
        if not isinstance(text, str) or not text.strip():
            return _error(400, "empty_text", "submission text is empty")
        record["text"] = text
        record["status"] = RECEIVED
        record["document"] = None
        record["error"] = None
        store.save(submission_id, record)
        background.add_task(process, submission_id)
        return {"id": submission_id, "status": RECEIVED}

    # Heal submissions a previous process left unprocessed.
    for pending_id in store.list_ids():
        pending = store.load(pending_id)
        if pending is not None and pending["status"] == RECEIVED:
            process(pending_id)

    return app
