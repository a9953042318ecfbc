"""Disk-backed submission store: one JSON document per submission,
written atomically (temp file + rename) so a crash never leaves a
half-written record. The directory is the source of truth; a process
restart sees exactly what was last saved.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

_ID_RE = re.compile(r"^[A-Za-z0-9_-]+$")


class SubmissionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, submission_id: str) -> Path:
        if not _ID_RE.match(submission_id):
            raise ValueError(f"invalid submission id {submission_id!r}")
        return self.root / f"{submission_id}.json"

    def save(self, submission_id: str, payload: dict) -> None:
        path = self._path(submission_id)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(payload, handle, sort_keys=True, ensure_ascii=False)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except FileNotFoundError:
                pass
            raise

    def load(self, submission_id: str) -> dict | None:
        path = self._path(submission_id)
        try:
            with open(path, encoding="utf-8") as handle:
                return json.load(handle)
        except FileNotFoundError:
            return None

    def exists(self, submission_id: str) -> bool:
        return self._path(submission_id).exists()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))
