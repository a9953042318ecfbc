"""Exception types shared across the package."""

from __future__ import annotations


class AwegecError(Exception):
    """Base class for all errors raised by this package."""


# -- parsing ----------------------------------------------------------------

class UnbalancedParens(AwegecError):
    """Bracketed tree has unbalanced parentheses. ``position`` is 1-based."""

    def __init__(self, position: int):
        self.position = position
        super().__init__(f"unbalanced parentheses at position {position}")


class EmptyNode(AwegecError):
    """Bracketed tree contains a node with no label or no content."""

    def __init__(self, position: int):
        self.position = position
        super().__init__(f"empty node at position {position}")


class MalformedLine(AwegecError):
    """An input file line does not match the expected format."""

    def __init__(self, line_number: int, detail: str = ""):
        self.line_number = line_number
        msg = f"malformed line {line_number}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


# -- edits ------------------------------------------------------------------

class OverlappingEdits(AwegecError):
    def __init__(self, detail: str = "edits overlap"):
        super().__init__(detail)


class SpanOutOfRange(AwegecError):
    pass


# -- evaluation -------------------------------------------------------------

class LengthMismatch(AwegecError):
    pass


class NoAnnotators(AwegecError):
    def __init__(self, sentence_index: int):
        self.sentence_index = sentence_index
        super().__init__(f"sentence {sentence_index} has no annotators")


# -- scoring ----------------------------------------------------------------

class SchemaMismatch(AwegecError):
    pass


class DegenerateRange(AwegecError):
    def __init__(self, prompt_id: int, rubric: str):
        self.prompt_id = prompt_id
        self.rubric = rubric
        super().__init__(f"degenerate score range for prompt {prompt_id}, rubric {rubric!r}")


class InsufficientData(AwegecError):
    pass


class MissingPrompt(AwegecError):
    def __init__(self, prompt_id: int):
        self.prompt_id = prompt_id
        super().__init__(f"prompt {prompt_id} missing from dataset")


class EmptyEssay(AwegecError):
    pass


# -- correction backends ----------------------------------------------------

class CorrectionTimeout(AwegecError):
    def __init__(self, timeout_ms: int):
        self.timeout_ms = timeout_ms
        super().__init__(f"correction backend timed out after {timeout_ms} ms")


class BadResponse(AwegecError):
    pass


class BackendUnavailable(AwegecError):
    pass


# -- pipeline stages ---------------------------------------------------------

class CorrectionFailure(AwegecError):
    """Correction stage failed while processing a submission."""


class ScoringFailure(AwegecError):
    """Feature extraction or score prediction failed while processing."""


# -- service ----------------------------------------------------------------

class ServiceError(AwegecError):
    """Service-level error carrying a machine-readable code."""

    code = "service_error"


class EmptyText(ServiceError):
    code = "empty_text"


class UnknownPrompt(ServiceError):
    code = "unknown_prompt"


class NotFound(ServiceError):
    code = "not_found"


class NotYetAvailable(ServiceError):
    code = "not_ready"

    def __init__(self, status: str):
        self.status = status
        super().__init__(f"feedback not yet available (status: {status})")


class NotProcessed(ServiceError):
    code = "not_processed"


class AlreadyReleased(ServiceError):
    code = "already_released"
