"""M2 annotation format: "S" source lines followed by "A" edit lines.

Wire format, per sentence block:

    S <token> <token> ...
    A <start> <end>|||<type>|||<correction>|||REQUIRED|||-NONE-|||<annotator>
    <blank line>

The correction field space-joins the replacement tokens; a deletion writes
an empty correction. A "noop" line with span -1 -1 declares the sentence
correct for that annotator. Writing is canonical and byte-stable:
``read_m2(write_m2(x)) == x`` and writing back a canonically formatted
file reproduces it byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .align import Edit
from .errors import MalformedLine, OverlappingEdits
from .text import TokenizedSentence

NOOP_TYPE = "noop"
NONE_FIELD = "-NONE-"
REQUIRED_FIELD = "REQUIRED"


@dataclass(frozen=True)
class AnnotatedSentence:
    """One M2 entry: a source sentence plus per-annotator edit sets."""

    source: TokenizedSentence
    annotations: dict[int, tuple[Edit, ...]] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.source.tokens)
        for annotator, edits in self.annotations.items():
            prev_end = 0
            for k, e in enumerate(edits):
                if e.end > n:
                    raise OverlappingEdits(
                        f"annotator {annotator}: edit {e.src_span} outside sentence"
                    )
                if k > 0 and (e.start < edits[k - 1].start or e.start < prev_end):
                    raise OverlappingEdits(
                        f"annotator {annotator}: edits unsorted or overlapping"
                    )
                prev_end = e.end


def read_m2(contents: str) -> list[AnnotatedSentence]:
    """Parse M2 file contents. Line numbers in errors are 1-based."""
    entries: list[AnnotatedSentence] = []
    source: TokenizedSentence | None = None
    annotations: dict[int, list[Edit]] = {}

    def close_block():
        nonlocal source, annotations
        if source is not None:
            entries.append(AnnotatedSentence(
                source,
                {a: tuple(es) for a, es in sorted(annotations.items())},
            ))
        source = None
        annotations = {}

    for lineno, line in enumerate(contents.splitlines(), start=1):
        if not line.strip():
            close_block()
            continue
        if line.startswith("S ") or line == "S":
            if source is not None:
                close_block()
            tokens = line[2:].split(" ") if len(line) > 2 else []
            tokens = [t for t in tokens if t]
            source = TokenizedSentence.from_tokens(tokens)
        elif line.startswith("A "):
            if source is None:
                raise MalformedLine(lineno, "edit line before any source line")
            annotator, edit = _parse_edit_line(line, lineno)
            bucket = annotations.setdefault(annotator, [])
            if edit is not None:
                if bucket and edit.start < bucket[-1].end:
                    raise OverlappingEdits(
                        f"annotator {annotator}, line {lineno}: overlapping edits"
                    )
                bucket.append(edit)
        else:
            raise MalformedLine(lineno, f"unrecognized line {line!r}")
    close_block()
    return entries


def _parse_edit_line(line: str, lineno: int) -> tuple[int, Edit | None]:
    fields = line[2:].split("|||")
    if len(fields) != 6:
        raise MalformedLine(lineno, f"expected 6 |||-fields, got {len(fields)}")
    span, etype, correction, _required, _none, annotator_s = fields
    parts = span.split()
    if len(parts) != 2:
        raise MalformedLine(lineno, f"bad span {span!r}")
    try:
        start, end = int(parts[0]), int(parts[1])
        annotator = int(annotator_s)
    except ValueError:
        raise MalformedLine(lineno, "non-integer span or annotator") from None
    if annotator < 0:
        raise MalformedLine(lineno, "negative annotator id")
    if etype == NOOP_TYPE or (start, end) == (-1, -1):
        return annotator, None
    if start < 0 or end < start:
        raise MalformedLine(lineno, f"bad span ({start}, {end})")
    replacement = () if correction in ("", NONE_FIELD) else tuple(correction.split(" "))
    try:
        return annotator, Edit((start, end), replacement, etype)
    except ValueError as exc:
        raise MalformedLine(lineno, str(exc)) from None


def write_m2(entries: list[AnnotatedSentence]) -> str:
    """Serialize entries to canonical M2 text."""
    blocks = []
    for entry in entries:
        lines = ["S " + " ".join(entry.source.tokens)]
        for annotator in sorted(entry.annotations):
            edits = entry.annotations[annotator]
            if not edits:
                lines.append(
                    f"A -1 -1|||{NOOP_TYPE}|||{NONE_FIELD}|||"
                    f"{REQUIRED_FIELD}|||{NONE_FIELD}|||{annotator}"
                )
                continue
            for e in edits:
                correction = " ".join(e.replacement)
                lines.append(
                    f"A {e.start} {e.end}|||{e.etype}|||{correction}|||"
                    f"{REQUIRED_FIELD}|||{NONE_FIELD}|||{annotator}"
                )
        blocks.append("\n".join(lines) + "\n\n")
    return "".join(blocks)
